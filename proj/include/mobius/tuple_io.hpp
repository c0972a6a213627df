#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mobius/exact.hpp"
#include "mobius/moebius_map.hpp"

namespace mobius {

/// A generator tuple. `exact` mirrors `maps` when every coefficient was
/// written as an integer, fraction or finite decimal.
struct Tuple {
  std::vector<MoebiusMap> maps;
  std::optional<std::vector<RationalMatrix>> exact;

  std::size_t size() const { return maps.size(); }
};

Tuple make_tuple(std::vector<MoebiusMap> maps);
Tuple make_tuple(std::vector<RationalMatrix> exact);

/// One map per line, "a b c d" for z -> (az+b)/(cz+d); '#' starts a comment.
/// Throws Error(ParseError) naming the line.
Tuple parse_tuple(const std::string& text);
Tuple load_tuple(const std::string& path);
std::string format_tuple(const Tuple& t);

}  // namespace mobius
