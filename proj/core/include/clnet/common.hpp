#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace clnet {

using NodeId = int;
using PairId = int;  // 1-based S-D pair index
using Rational = boost::rational<long long>;

enum class Errc {
  CrossLayerEdge,
  LayerMismatch,
  DanglingGain,
  DuplicateEdge,
  EmptyNetwork,
  BadNodeId,
  GainExceedsQ,
  ParseError,
  MalformedAssignment,
  InvalidColoring,
  Unroutable,
  StrategyArity,
  BadPattern,
  NotK22K,
  BadParams,
  UnroutableAfterRetries,
  NoCrossPath,
  UnsupportedM,
};

const char* errc_name(Errc e);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Color sets are bitmasks over at most 64 colors.
using ColorSet = std::uint64_t;
constexpr int kMaxColors = 64;

inline ColorSet bit(int c) { return ColorSet{1} << c; }
inline int popcount(ColorSet s) { return std::popcount(s); }
inline bool has(ColorSet s, int c) { return (s >> c) & 1U; }
inline ColorSet low_mask(int n) { return n >= 64 ? ~ColorSet{0} : (bit(n) - 1); }
inline int lowest(ColorSet s) { return std::countr_zero(s); }

std::vector<int> colors_of(ColorSet s);
ColorSet make_set(const std::vector<int>& colors);
std::string format_set(ColorSet s);  // "{0,2}"

std::string format_rational(const Rational& r);  // "1/2", "1"

}  // namespace clnet
