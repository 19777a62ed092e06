#pragma once

// Text and JSON interchange: 1-based zero-pattern syntax, term-stream export,
// linear-form input files and LaTeX rendering.

#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "birkhoff/errors.hpp"
#include "birkhoff/exactmath.hpp"
#include "birkhoff/integration.hpp"
#include "birkhoff/mgf.hpp"
#include "json.hpp"

namespace birkhoff {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline int parse_index(std::string_view s, int n) {
  s = trim(s);
  if (s.empty() || s.size() > 3) throw InvalidInput("bad matrix index '" + std::string(s) + "'");
  int v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') throw InvalidInput("bad matrix index '" + std::string(s) + "'");
    v = v * 10 + (ch - '0');
  }
  if (v < 1 || v > n)
    throw InvalidInput("index " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
  return v - 1;
}

}  // namespace detail

/// "i,j" (1-based) -> 0-based cell.
inline DirectedEdge parse_cell(std::string_view text, int n) {
  auto comma = text.find(',');
  if (comma == std::string_view::npos) throw InvalidInput("expected 'i,j', got '" + std::string(text) + "'");
  return {detail::parse_index(text.substr(0, comma), n), detail::parse_index(text.substr(comma + 1), n)};
}

/// "i,j;i,j;..." (1-based). Empty text means no zeros.
inline ZeroPattern parse_zero_pattern(std::string_view text, int n) {
  std::vector<DirectedEdge> cells;
  while (!detail::trim(text).empty()) {
    auto semi = text.find(';');
    auto item = detail::trim(text.substr(0, semi));
    if (!item.empty()) cells.push_back(parse_cell(item, n));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return ZeroPattern(n, std::move(cells));
}

inline std::string format_zero_pattern(const ZeroPattern& zeros) {
  std::string out;
  for (auto [i, j] : zeros.cells()) {
    if (!out.empty()) out += ';';
    out += std::to_string(i + 1) + "," + std::to_string(j + 1);
  }
  return out;
}

inline Json zero_pattern_json(const ZeroPattern& zeros) {
  Json arr = Json::array();
  for (auto [i, j] : zeros.cells()) arr.push_back({i + 1, j + 1});
  return arr;
}

inline Json polynomial_json(const Polynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coefficients()) arr.push_back(c.to_string());
  return arr;
}

/// {sign, vertex: 1-based image, rays: [[row-major entries]]}
inline Json term_json(const ConeTerm& term) {
  Json vertex = Json::array();
  for (int v : term.vertex.image()) vertex.push_back(v + 1);
  Json rays = Json::array();
  for (const auto& ray : term.rays) {
    Json entries = Json::array();
    for (auto e : ray.entries()) entries.push_back(static_cast<int>(e));
    rays.push_back(std::move(entries));
  }
  return Json{{"sign", term.sign}, {"vertex", std::move(vertex)}, {"rays", std::move(rays)}};
}

inline Json terms_json(const TermSource& terms) {
  Json arr = Json::array();
  terms.for_each([&](const ConeTerm& t) { arr.push_back(term_json(t)); });
  return arr;
}

/// Inverse of term_json for an n x n stream entry.
inline ConeTerm term_from_json(const Json& j) {
  try {
    ConeTerm term;
    term.sign = j.at("sign").get<int>();
    if (term.sign != 1 && term.sign != -1) throw InvalidInput("term sign must be +1 or -1");
    std::vector<int> image;
    for (int v : j.at("vertex")) image.push_back(v - 1);
    term.vertex = Permutation(std::move(image));
    const int n = term.vertex.size();
    for (const auto& r : j.at("rays")) {
      std::vector<std::int8_t> entries;
      for (int v : r) {
        if (v < -1 || v > 1) throw InvalidInput("ray entries must lie in {-1,0,1}");
        entries.push_back(static_cast<std::int8_t>(v));
      }
      term.rays.emplace_back(n, std::move(entries));
    }
    return term;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed term JSON: ") + e.what());
  }
}

/// {"n": int, "y": [[rational strings]]}; bare JSON integers are accepted too.
inline LinearForm linear_form_from_json(const Json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 2 || n > 8) throw InvalidInput("linear form n must lie in [2, 8]");
    const auto& rows = j.at("y");
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
      throw InvalidInput("linear form 'y' must have n rows");
    SquareMatrix<Rational> y(n);
    for (int i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
        throw InvalidInput("linear form row " + std::to_string(i + 1) + " must have n entries");
      for (int k = 0; k < n; ++k) {
        const auto& v = row[static_cast<std::size_t>(k)];
        if (v.is_string())
          y(i, k) = Rational::parse(v.get<std::string>());
        else if (v.is_number_integer())
          y(i, k) = Rational(v.get<long>());
        else
          throw InvalidInput("linear form entries must be rational strings");
      }
    }
    return LinearForm(std::move(y));
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed linear form JSON: ") + e.what());
  }
}

inline LinearForm read_linear_form(std::istream& in) {
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("linear form file is not JSON: ") + e.what());
  }
  return linear_form_from_json(j);
}

inline std::string latex_rational(const Rational& r) {
  if (r.is_integer()) return r.to_string();
  std::string sign = r.sign() < 0 ? "-" : "";
  return sign + "\\frac{" + Integer(abs(r.raw().get_num())).get_str() + "}{" + r.denominator().get_str() + "}";
}

inline std::string latex_polynomial(const Polynomial& p, std::string_view var = "t") {
  std::string out;
  for (std::size_t k = 0; k < p.coefficients().size(); ++k) {
    const Rational& c = p[k];
    if (c.is_zero() && !(k == 0 && p.coefficients().size() == 1)) continue;
    std::string mag = latex_rational(c.sign() < 0 ? -c : c);
    if (out.empty())
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    if (k == 0) {
      out += mag;
      continue;
    }
    if (mag != "1") out += mag + " ";
    out += std::string(var);
    if (k > 1) out += "^{" + std::to_string(k) + "}";
  }
  return out;
}

namespace detail {

inline std::string latex_monomial(const RayMatrix& b) {
  std::string pos, neg;
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) {
      const std::string var = "z_{" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "}";
      if (b(i, j) > 0) pos += var;
      if (b(i, j) < 0) neg += var + "^{-1}";
    }
  return pos + neg;
}

}  // namespace detail

/// The generating function written out term by term, one summand per line.
inline std::string latex_mgf(const TermSource& terms) {
  if (terms.n() > 3) throw InvalidInput("LaTeX rendering is limited to n <= 3");
  std::ostringstream out;
  out << "f(tP, \\mathbf{z}) =";
  bool first = true;
  terms.for_each([&](const ConeTerm& term) {
    out << "\n  " << (first ? "" : "+ ") << (term.sign < 0 ? "- " : "");
    first = false;
    for (int i = 0; i < term.vertex.size(); ++i)
      out << "z_{" << i + 1 << "," << term.vertex(i) + 1 << "}^{t}";
    for (const auto& ray : term.rays) out << " \\frac{1}{1 - " << detail::latex_monomial(ray) << "}";
  });
  if (first) out << " 0";
  out << "\n";
  return out.str();
}

}  // namespace birkhoff
