#pragma once

#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "json.hpp"
#include "jip/divisor_solver.hpp"

namespace jip {

// key=value lines: n, s, terms = standard|extended, lambda.<k> = <rational>|sym; '#' starts a comment.
struct CurveSpec {
  int n = 0, s = 0;
  TermSet set = TermSet::standard;
  std::map<int, std::optional<Rational>> lambdas;  // nullopt = sym
};

inline std::string trim(const std::string& t) {
  auto b = t.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = t.find_last_not_of(" \t\r");
  return t.substr(b, e - b + 1);
}

inline int parse_int(const std::string& v, const std::string& key) {
  std::size_t used = 0;
  int r = 0;
  try {
    r = std::stoi(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw Error(ErrorKind::ParseError, "bad integer for " + key + ": '" + v + "'");
  return r;
}

inline CurveSpec parse_curve_text(const std::string& text) {
  CurveSpec c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    if (key == "n") c.n = parse_int(val, key);
    else if (key == "s") c.s = parse_int(val, key);
    else if (key == "terms") {
      if (val == "standard") c.set = TermSet::standard;
      else if (val == "extended") c.set = TermSet::extended;
      else throw Error(ErrorKind::ParseError, "terms must be standard or extended");
    } else if (key.rfind("lambda.", 0) == 0) {
      int k = parse_int(key.substr(7), key);
      if (val == "sym") c.lambdas[k] = std::nullopt;
      else {
        try {
          c.lambdas[k] = Rational::parse(val);
        } catch (const std::exception&) {
          throw Error(ErrorKind::ParseError, "bad rational for " + key + ": '" + val + "'");
        }
      }
    } else {
      throw Error(ErrorKind::ParseError, "unknown key '" + key + "'");
    }
  }
  if (c.n == 0 || c.s == 0) throw Error(ErrorKind::ParseError, "curve file needs n and s");
  return c;
}

inline CurveSpec load_curve_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_curve_text(ss.str());
}

inline CurveFamily symbolic_family(const CurveSpec& c) {
  std::map<int, LambdaValue> v;
  for (const auto& [k, q] : c.lambdas) v[k] = q ? LambdaValue::num(*q) : LambdaValue::sym();
  return make_family(c.n, c.s, v, c.set);
}

// Numeric family; sym or unlisted λ are drawn uniformly from [−1,1].
inline CurveFamily numeric_family(const CurveSpec& c, std::mt19937_64& rng) {
  symbolic_family(c);  // validates indices
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  std::map<int, double> v;
  for (const auto& t : admissible_terms(c.n, c.s, c.set)) {
    auto it = c.lambdas.find(t.k);
    v[t.k] = it != c.lambdas.end() && it->second ? it->second->to_double() : U(rng);
  }
  return make_numeric_family(c.n, c.s, v, c.set);
}

inline nlohmann::ordered_json divisor_to_json(const Divisor& D) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& p : D.points) out.push_back({p.x.real(), p.x.imag(), p.y.real(), p.y.imag()});
  return out;
}

inline Divisor divisor_from_json(const CurveFamily& fam, const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "divisor must be a JSON list");
  std::vector<CurvePoint> pts;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) throw Error(ErrorKind::ParseError, "divisor entries are [re x, im x, re y, im y]");
    pts.push_back({cplx(e[0].get<double>(), e[1].get<double>()), cplx(e[2].get<double>(), e[3].get<double>())});
  }
  return make_divisor(fam, std::move(pts));
}

}  // namespace jip
