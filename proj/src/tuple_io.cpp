#include "mobius/tuple_io.hpp"

#include <fstream>
#include <sstream>

#include "mobius/error.hpp"

namespace mobius {

Tuple make_tuple(std::vector<MoebiusMap> maps) {
  Tuple t;
  t.maps = std::move(maps);
  return t;
}

Tuple make_tuple(std::vector<RationalMatrix> exact) {
  Tuple t;
  for (const auto& m : exact) t.maps.push_back(m.to_map());
  t.exact = std::move(exact);
  return t;
}

Tuple parse_tuple(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<MoebiusMap> maps;
  std::vector<RationalMatrix> exact;
  bool all_exact = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string s; fields >> s;) tok.push_back(s);
    if (tok.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (tok.size() != 4) throw Error(ErrorCode::ParseError, where + ": expected 4 coefficients");
    double v[4];
    Rational q[4];
    bool line_exact = true;
    for (int k = 0; k < 4; ++k) {
      if (auto r = parse_rational(tok[k])) {
        q[k] = *r;
        v[k] = r->get_d();
        continue;
      }
      line_exact = false;
      std::size_t used = 0;
      try {
        v[k] = std::stod(tok[k], &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok[k].size()) {
        throw Error(ErrorCode::ParseError, where + ": bad number '" + tok[k] + "'");
      }
    }
    try {
      if (line_exact) {
        RationalMatrix rm{q[0], q[1], q[2], q[3]};
        maps.push_back(rm.to_map());
        exact.push_back(rm);
      } else {
        maps.emplace_back(v[0], v[1], v[2], v[3]);
        all_exact = false;
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::ParseError, where + ": " + e.what());
    }
  }
  if (maps.empty()) throw Error(ErrorCode::ParseError, "no maps in tuple");
  Tuple t;
  t.maps = std::move(maps);
  if (all_exact) t.exact = std::move(exact);
  return t;
}

Tuple load_tuple(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_tuple(buf.str());
}

std::string format_tuple(const Tuple& t) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.exact) {
      const auto& m = (*t.exact)[i];
      out << m.a << ' ' << m.b << ' ' << m.c << ' ' << m.d << '\n';
    } else {
      const auto& m = t.maps[i];
      out << m.a() << ' ' << m.b() << ' ' << m.c() << ' ' << m.d() << '\n';
    }
  }
  return out.str();
}

}  // namespace mobius
