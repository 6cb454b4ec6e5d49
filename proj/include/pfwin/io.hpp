#pragma once

// Text and JSON front end: bundle expressions, and JSON encoders with
// matching decoders so every emitted document can be read back.

#include "pfwin/verify.hpp"

#include <json.hpp>

#include <cctype>
#include <limits>
#include <string>

namespace pfwin {

using json = nlohmann::ordered_json;

// Bumped whenever a convention constant changes; part of every cache key.
inline constexpr const char *kConventionsVersion = "bwb-(m,m-l)/pfaffian-1/jshriek+1/pole-mu/v1";

/// O(m) | S(m) | Sym^l S(m) | Sym^l S^v(m), whitespace-insensitive.
inline SBundle parse_bundle(const std::string &text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::size_t pos = 0;
  auto fail = [&](const std::string &why) -> SBundle {
    throw InvalidInput("cannot parse bundle '" + text + "': " + why + " at '" + s.substr(std::min(pos, s.size())) + "'");
  };
  auto read_int = [&](long lo, long hi) {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) {
      pos = start;
      fail("expected an integer");
    }
    long v = std::stol(s.substr(start, pos - start));
    if (v < lo || v > hi) {
      pos = start;
      fail("integer out of range");
    }
    return static_cast<int>(v);
  };
  auto eat = [&](const std::string &tok) {
    if (s.compare(pos, tok.size(), tok) != 0) return false;
    pos += tok.size();
    return true;
  };
  constexpr long lim = 1000000;
  int l = 1;
  bool dual = false;
  if (eat("O")) {
    l = 0;
  } else {
    if (eat("Sym^")) {
      l = read_int(0, lim);
      if (!eat("S")) return fail("expected 'S'");
    } else if (!eat("S")) {
      return fail("expected 'O', 'S' or 'Sym^'");
    }
    dual = eat("^v");
  }
  if (!eat("(")) return fail("expected '('");
  const int m = read_int(-lim, lim);
  if (!eat(")")) return fail("expected ')'");
  if (pos != s.size()) return fail("trailing input");
  return dual ? dual_to_s_form(l, m) : SBundle{l, m};
}

inline std::string format_bundle(SBundle b) {
  if (b.l == 0) return "O(" + std::to_string(b.m) + ")";
  if (b.l == 1) return "S(" + std::to_string(b.m) + ")";
  return "Sym^" + std::to_string(b.l) + " S(" + std::to_string(b.m) + ")";
}

inline json int_json(const Int &v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

inline Int int_from_json(const json &j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw InvalidInput("expected an integer in JSON");
}

inline json bundle_json(SBundle b) { return {{"l", b.l}, {"m", b.m}}; }
inline SBundle bundle_from_json(const json &j) { return make_sbundle(j.at("l").get<int>(), j.at("m").get<int>()); }

inline json cohomology_json(const CohomologyProfile &p, bool irreps = false) {
  json arr = json::array();
  for (const auto &[d, r] : p.terms) {
    json t{{"degree", d}, {"dim", int_json(r.dim)}};
    if (irreps) t["irrep"] = {{"partition", r.shape.parts()}, {"det_twist", r.det_twist}};
    arr.push_back(t);
  }
  return arr;
}

inline CohomologyProfile cohomology_from_json(const json &arr) {
  CohomologyProfile p;
  for (const auto &t : arr) {
    GlIrrep r{{}, 0, int_from_json(t.at("dim"))};
    if (t.contains("irrep")) {
      r.shape = Partition(t["irrep"].at("partition").get<std::vector<int>>());
      r.det_twist = t["irrep"].at("det_twist").get<int>();
    }
    p.terms.emplace(t.at("degree").get<int>(), r);
  }
  return p;
}

inline json ext_json(const ExtProfile &p) {
  json arr = json::array();
  for (const auto &[d, v] : p.dims) arr.push_back({{"degree", d}, {"dim", int_json(v)}});
  return arr;
}

inline ExtProfile ext_from_json(const json &arr) {
  ExtProfile p;
  for (const auto &t : arr) p.add(t.at("degree").get<int>(), int_from_json(t.at("dim")));
  return p;
}

inline json matrix_json(const IntMatrix &m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_json(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

inline IntMatrix matrix_from_json(const json &rows) {
  const std::size_t nr = rows.size(), nc = nr ? rows[0].size() : 0;
  IntMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i) {
    if (rows[i].size() != nc) throw InvalidInput("ragged matrix in JSON");
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = int_from_json(rows[i][j]);
  }
  return m;
}

inline json certificate_json(const VanishingCertificate &c) {
  json j{{"verdict", c.verdict}, {"range", {c.range_lo, c.range_hi}}, {"bound", c.bound}};
  if (c.witness)
    j["witness"] = {{"n", c.witness->n},
                    {"summand", bundle_json(c.witness->summand)},
                    {"degree", c.witness->degree},
                    {"dim", int_json(c.witness->dim)}};
  return j;
}

inline VanishingCertificate certificate_from_json(const json &j) {
  VanishingCertificate c;
  c.verdict = j.at("verdict").get<bool>();
  c.range_lo = j.at("range").at(0).get<long>();
  c.range_hi = j.at("range").at(1).get<long>();
  c.bound = j.at("bound").get<long>();
  if (j.contains("witness")) {
    const auto &w = j["witness"];
    c.witness = ExtWitness{w.at("n").get<long>(), SBundle{w.at("summand").at("l").get<int>(), w.at("summand").at("m").get<int>()},
                           w.at("degree").get<int>(), int_from_json(w.at("dim"))};
  }
  return c;
}

inline json check_json(const CheckResult &r, bool timings) {
  json j{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (timings) j["seconds"] = r.seconds;
  return j;
}

inline json report_json(const std::vector<CheckResult> &rs, bool timings) {
  json checks = json::array();
  bool all = true;
  for (const auto &r : rs) {
    checks.push_back(check_json(r, timings));
    all = all && r.pass;
  }
  return {{"tool", "pfwin"}, {"version", "1.0.0"}, {"conventions", kConventionsVersion}, {"verdict", all}, {"checks", checks}};
}

inline std::vector<CheckResult> report_from_json(const json &j) {
  std::vector<CheckResult> out;
  for (const auto &c : j.at("checks")) {
    CheckResult r;
    r.id = c.at("id").get<int>();
    r.name = c.at("name").get<std::string>();
    r.pass = c.at("pass").get<bool>();
    r.detail = c.at("detail").get<std::string>();
    r.witness = c.value("witness", "");
    r.seconds = c.value("seconds", 0.0);
    out.push_back(r);
  }
  return out;
}

} // namespace pfwin
