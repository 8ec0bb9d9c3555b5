#pragma once

// JSON export and import of matrices, reports and certificates.
// Integers are written as JSON numbers when they fit in 64 bits and as
// decimal strings otherwise; rationals are always "num/den" strings.

#include "plfnet/pinning.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace plfnet {

using Json = nlohmann::json;

inline Json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw std::invalid_argument("expected an integer");
}

inline Json vector_to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(int_to_json(x));
  return a;
}

inline IntVector vector_from_json(const Json& j) {
  IntVector v;
  for (const auto& x : j) v.push_back(int_from_json(x));
  return v;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vector_to_json(m.row(r)));
  return a;
}

inline IntMatrix matrix_from_json(const Json& j, std::size_t cols_if_empty = 0) {
  std::size_t rows = j.size();
  std::size_t cols = rows ? j[0].size() : cols_if_empty;
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (j[r].size() != cols) throw std::invalid_argument("ragged matrix in JSON");
    m.set_row(r, vector_from_json(j[r]));
  }
  return m;
}

inline Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(to_fraction_string(q));
  return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  std::vector<Rational> v;
  for (const auto& x : j) {
    auto q = parse_fraction_string(x.is_string() ? x.get<std::string>() : x.dump());
    if (!q) throw std::invalid_argument("bad fraction in JSON");
    v.push_back(*q);
  }
  return v;
}

inline Json poly_to_json(const IntPoly& p) { return vector_to_json(p.coefficients()); }
inline IntPoly poly_from_json(const Json& j) { return IntPoly(vector_from_json(j)); }

inline Json modes_to_json(const std::vector<Mode>& modes, const ReactionNetwork* net = nullptr) {
  Json a = Json::array();
  for (std::size_t k = 0; k < modes.size(); ++k) {
    const Mode& m = modes[k];
    Json e{{"mode", k}, {"reaction", m.reaction}, {"species", m.species}, {"sign", m.sign}};
    if (net) {
      const Reaction& r = net->reactions[net->internal_reactions[m.reaction]];
      if (!r.label.empty()) e["rate"] = r.label;
      e["species_name"] = net->species[m.species].name;
    }
    a.push_back(std::move(e));
  }
  return a;
}

inline Json bdc_to_json(const BDCSystem& s, const ReactionNetwork* net = nullptr) {
  return Json{{"n", s.n},
              {"q", s.q},
              {"labels", s.labels},
              {"B", matrix_to_json(s.B)},
              {"C", matrix_to_json(s.C)},
              {"modes", modes_to_json(s.modes, net)}};
}

inline Json edf_to_json(const EDFSystem& s, const ReactionNetwork* net = nullptr) {
  return Json{{"m", s.m},
              {"q", s.q},
              {"labels", s.labels},
              {"E", matrix_to_json(s.E)},
              {"F", matrix_to_json(s.F)},
              {"modes", modes_to_json(s.modes, net)}};
}

inline Json vertex_set_to_json(const VertexSet& v) {
  Json a = Json::array();
  for (const auto& c : v.columns) a.push_back(vector_to_json(c));
  return a;
}

inline VertexSet vertex_set_from_json(const Json& j, std::size_t n) {
  std::vector<IntVector> cols;
  for (const auto& c : j) cols.push_back(vector_from_json(c));
  return VertexSet::from_columns(n, cols);
}

inline Json certificate_to_json(const Certificate& c) {
  if (auto* a = std::get_if<InclusionCertificate>(&c)) {
    Json w = Json::array();
    for (const auto& p : a->witnesses) w.push_back(rationals_to_json(p));
    Json o = Json::array();
    for (const auto& x : a->origins) o.push_back({{"start", x.start}, {"word", x.word}});
    return Json{{"kind", "inclusion"}, {"vertices", vertex_set_to_json(a->vertices)}, {"witnesses", w}, {"origins", o}};
  }
  if (auto* e = std::get_if<EigenCertificate>(&c)) {
    Json j{{"kind", "eigen"},
           {"failure", e->failure == EigenFailure::NonCyclotomic ? "non-cyclotomic" : "jordan-block"},
           {"word", e->word},
           {"characteristic_polynomial", poly_to_json(e->characteristic)},
           {"characteristic_text", e->characteristic.to_string()},
           {"description", e->description}};
    if (e->failure == EigenFailure::NonCyclotomic) {
      j["offending_factor"] = poly_to_json(e->offending);
      j["offending_text"] = e->offending.to_string();
    } else {
      j["period"] = e->period;
    }
    return j;
  }
  return Json(nullptr);
}

inline Certificate certificate_from_json(const Json& j, std::size_t n) {
  if (j.is_null()) return std::monostate{};
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "inclusion") {
    InclusionCertificate c;
    c.vertices = vertex_set_from_json(j.at("vertices"), n);
    for (const auto& w : j.at("witnesses")) c.witnesses.push_back(rationals_from_json(w));
    for (const auto& o : j.at("origins")) c.origins.push_back({o.at("start").get<std::size_t>(), o.at("word").get<Word>()});
    return c;
  }
  if (kind == "eigen") {
    EigenCertificate c;
    c.word = j.at("word").get<Word>();
    c.failure = j.at("failure").get<std::string>() == "jordan-block" ? EigenFailure::JordanBlock
                                                                      : EigenFailure::NonCyclotomic;
    c.characteristic = poly_from_json(j.at("characteristic_polynomial"));
    if (j.contains("offending_factor")) c.offending = poly_from_json(j.at("offending_factor"));
    if (j.contains("period")) c.period = j.at("period").get<unsigned long>();
    c.description = j.value("description", "");
    return c;
  }
  throw std::invalid_argument("unknown certificate kind '" + kind + "'");
}

inline Json plf_result_to_json(const PLFResult& r, bool with_history = true) {
  Json j{{"verdict", to_string(r.verdict)},
         {"iterations", r.iterations},
         {"pair_count", r.pair_count()},
         {"vertex_count", r.vertex_count()},
         {"columns", vertex_set_to_json(r.vertex_set)},
         {"certificate", certificate_to_json(r.certificate)},
         {"eigen_layers", r.eigen_layers},
         {"eigen_products", r.eigen_products},
         {"seconds", r.seconds}};
  if (!r.budget_reason.empty()) j["budget_reason"] = r.budget_reason;
  if (with_history) {
    Json h = Json::array();
    for (const auto& s : r.history)
      h.push_back({{"columns", s.columns}, {"added", s.added}, {"removed", s.removed}, {"lps", s.lps}});
    j["history"] = h;
  }
  return j;
}

inline Json nonsingular_to_json(const NonSingReport& r, bool with_terms = false) {
  Json j{{"verdict", to_string(r.structural)}, {"subsets_examined", r.subsets_examined}, {"nonzero_terms", r.terms.size()}};
  if (r.witness) j["witness"] = {{"subset", r.witness->subset}, {"coefficient", int_to_json(r.witness->coefficient)}};
  if (with_terms) {
    Json t = Json::array();
    for (const auto& term : r.terms) t.push_back({{"subset", term.subset}, {"coefficient", int_to_json(term.coefficient)}});
    j["terms"] = t;
  }
  return j;
}

}  // namespace plfnet
