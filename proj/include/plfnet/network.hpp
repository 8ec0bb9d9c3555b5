#pragma once

// Reaction networks: the text format, the stoichiometric matrix S and the
// influx vector g0 of  x' = S g(x) + g0,  plus the standing-assumption check.
//
// Format (one reaction per line, '#' comments):
//   @species X1 X2 ...            fixes species order (optional, once, first)
//   rate g1: X1 + X2 -> X3        optional rate label
//   rate g12/g3: X1 + X2 <-> X3   labels for the forward/backward pair
//   0 -> X1   (or '∅')            influx
//   X3 -> 0                       degradation
//   X1 + X2 -> X3 inhibits X2     rate decreasing in X2 (sign override)

#include "plfnet/matrix.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace plfnet {

struct Species {
  std::string name;
  std::size_t index = 0;
};

enum class ReactionKind { Internal, Influx };

struct Reaction {
  std::vector<std::size_t> reactants;  // in the order written
  std::vector<std::size_t> products;
  ReactionKind kind = ReactionKind::Internal;
  std::string label;
  std::set<std::size_t> inhibitors;  // reactants whose rate dependence is decreasing
  std::size_t line = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

struct ReactionNetwork {
  std::vector<Species> species;
  std::vector<Reaction> reactions;
  IntMatrix S;                               // n x m, one column per internal reaction
  IntVector g0;                              // influx counts
  std::vector<std::size_t> internal_reactions;  // S column j -> index into reactions

  std::size_t n() const { return species.size(); }
  std::size_t m() const { return internal_reactions.size(); }

  std::optional<std::size_t> find_species(std::string_view name) const {
    for (const auto& s : species)
      if (s.name == name) return s.index;
    return std::nullopt;
  }

  std::size_t species_index(std::string_view name) const {
    auto i = find_species(name);
    if (!i) throw std::invalid_argument("unknown species '" + std::string(name) + "'");
    return *i;
  }

  std::vector<std::string> species_names() const {
    std::vector<std::string> out;
    for (const auto& s : species) out.push_back(s.name);
    return out;
  }

  friend bool operator==(const ReactionNetwork& a, const ReactionNetwork& b) {
    if (a.species_names() != b.species_names() || a.S != b.S || a.g0 != b.g0) return false;
    if (a.reactions.size() != b.reactions.size()) return false;
    for (std::size_t k = 0; k < a.reactions.size(); ++k) {
      const Reaction& r = a.reactions[k];
      const Reaction& s = b.reactions[k];
      if (r.reactants != s.reactants || r.products != s.products || r.kind != s.kind || r.label != s.label ||
          r.inhibitors != s.inhibitors)
        return false;
    }
    return true;
  }
};

enum class ParseMode {
  Strict,   // non-unitary stoichiometry is a ParseError
  Lenient,  // accepted; reported by validate_assumptions
};

namespace detail {

inline bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class LineLexer {
 public:
  LineLexer(std::string_view text, std::size_t line) : t_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < t_.size() && (t_[pos_] == ' ' || t_[pos_] == '\t' || t_[pos_] == '\r')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= t_.size();
  }
  std::size_t column() const { return pos_ + 1; }
  bool try_consume(std::string_view tok) {
    skip_ws();
    if (t_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }
  bool peek(std::string_view tok) {
    skip_ws();
    return t_.substr(pos_, tok.size()) == tok;
  }
  std::optional<std::string> identifier() {
    skip_ws();
    if (pos_ >= t_.size() || !is_ident_start(t_[pos_])) return std::nullopt;
    std::size_t b = pos_;
    while (pos_ < t_.size() && is_ident_char(t_[pos_])) ++pos_;
    return std::string(t_.substr(b, pos_ - b));
  }
  std::optional<unsigned long> number() {
    skip_ws();
    if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_]))) return std::nullopt;
    std::size_t b = pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    return std::stoul(std::string(t_.substr(b, pos_ - b)));
  }
  [[noreturn]] void fail(const std::string& what) { throw ParseError(line_, column(), what); }

 private:
  std::string_view t_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

struct ParsedComplex {
  std::vector<std::pair<std::string, unsigned long>> terms;  // (species, coefficient)
  bool empty = false;
};

inline ParsedComplex parse_complex(LineLexer& lx) {
  ParsedComplex c;
  if (lx.try_consume("\xE2\x88\x85")) {  // ∅
    c.empty = true;
    return c;
  }
  for (;;) {
    auto coeff = lx.number();
    if (coeff && *coeff == 0 && c.terms.empty()) {
      c.empty = true;
      return c;
    }
    auto name = lx.identifier();
    if (!name) lx.fail("expected species name");
    if (coeff && *coeff == 0) lx.fail("zero stoichiometric coefficient");
    c.terms.emplace_back(*name, coeff ? *coeff : 1);
    if (!lx.try_consume("+")) break;
  }
  return c;
}

}  // namespace detail

/// Builds S and g0 from the reaction list (species and reactions already set).
inline void rebuild_matrices(ReactionNetwork& net) {
  const std::size_t n = net.species.size();
  net.internal_reactions.clear();
  for (std::size_t k = 0; k < net.reactions.size(); ++k)
    if (net.reactions[k].kind == ReactionKind::Internal) net.internal_reactions.push_back(k);
  net.S = IntMatrix(n, net.internal_reactions.size());
  net.g0.assign(n, Int(0));
  for (std::size_t j = 0; j < net.internal_reactions.size(); ++j) {
    const Reaction& r = net.reactions[net.internal_reactions[j]];
    for (auto i : r.products) net.S(i, j) += 1;
    for (auto i : r.reactants) net.S(i, j) -= 1;
  }
  for (const auto& r : net.reactions)
    if (r.kind == ReactionKind::Influx)
      for (auto i : r.products) net.g0[i] += 1;
}

inline ReactionNetwork parse_network(std::string_view text, ParseMode mode = ParseMode::Strict) {
  ReactionNetwork net;
  std::map<std::string, std::size_t> index;
  bool declared = false;
  bool seen_reaction = false;

  auto intern = [&](const std::string& name, detail::LineLexer& lx) -> std::size_t {
    auto it = index.find(name);
    if (it != index.end()) return it->second;
    if (declared) lx.fail("species '" + name + "' not in @species declaration");
    std::size_t i = net.species.size();
    net.species.push_back({name, i});
    index.emplace(name, i);
    return i;
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    detail::LineLexer lx(line, line_no);
    if (lx.at_end()) {
      if (end == text.size()) break;
      continue;
    }

    if (lx.try_consume("@species")) {
      if (declared) lx.fail("duplicate @species declaration");
      if (seen_reaction) lx.fail("@species must precede all reactions");
      declared = true;
      while (!lx.at_end()) {
        auto name = lx.identifier();
        if (!name) lx.fail("expected species name");
        if (index.count(*name)) lx.fail("duplicate species declaration '" + *name + "'");
        std::size_t i = net.species.size();
        net.species.push_back({*name, i});
        index.emplace(*name, i);
      }
      if (end == text.size()) break;
      continue;
    }

    seen_reaction = true;
    std::string forward_label, backward_label;
    if (lx.try_consume("rate")) {
      auto l1 = lx.identifier();
      if (!l1) lx.fail("expected rate name");
      forward_label = *l1;
      if (lx.try_consume("/")) {
        auto l2 = lx.identifier();
        if (!l2) lx.fail("expected backward rate name");
        backward_label = *l2;
      }
      if (!lx.try_consume(":")) lx.fail("expected ':' after rate name");
    }

    std::size_t lhs_col = lx.column();
    detail::ParsedComplex lhs = detail::parse_complex(lx);
    bool reversible = false;
    if (lx.try_consume("<->")) reversible = true;
    else if (!lx.try_consume("->")) lx.fail("expected '->' or '<->'");
    std::size_t rhs_col = lx.column();
    detail::ParsedComplex rhs = detail::parse_complex(lx);
    std::vector<std::string> inhibited;
    while (lx.try_consume("inhibits")) {
      auto name = lx.identifier();
      if (!name) lx.fail("expected species after 'inhibits'");
      inhibited.push_back(*name);
      lx.try_consume(",");
    }
    if (!lx.at_end()) lx.fail("unexpected trailing input");
    if (lhs.empty && rhs.empty) throw ParseError(line_no, lhs_col, "reaction between two empty complexes");
    if (!backward_label.empty() && !reversible)
      throw ParseError(line_no, 1, "two rate names given for an irreversible reaction");

    auto expand = [&](const detail::ParsedComplex& c) {
      std::vector<std::size_t> out;
      for (const auto& [name, k] : c.terms)
        for (unsigned long r = 0; r < k; ++r) out.push_back(intern(name, lx));
      return out;
    };
    std::vector<std::size_t> left = expand(lhs);
    std::vector<std::size_t> right = expand(rhs);

    if (mode == ParseMode::Strict) {
      auto check_side = [&](const std::vector<std::size_t>& side, std::size_t col) {
        std::set<std::size_t> seen;
        for (auto i : side)
          if (!seen.insert(i).second)
            throw ParseError(line_no, col, "non-unitary stoichiometry: species '" + net.species[i].name +
                                                "' appears more than once in a complex");
      };
      check_side(left, lhs_col);
      check_side(right, rhs_col);
      for (auto i : left)
        if (std::find(right.begin(), right.end(), i) != right.end())
          throw ParseError(line_no, rhs_col,
                           "non-unitary stoichiometry: species '" + net.species[i].name + "' on both sides");
    }

    auto make = [&](const std::vector<std::size_t>& re, const std::vector<std::size_t>& pr, std::string label) {
      Reaction r;
      r.reactants = re;
      r.products = pr;
      r.kind = re.empty() ? ReactionKind::Influx : ReactionKind::Internal;
      r.label = std::move(label);
      r.line = line_no;
      return r;
    };
    Reaction fwd = make(left, right, forward_label);
    for (const auto& name : inhibited) {
      auto it = index.find(name);
      if (it == index.end() || std::find(left.begin(), left.end(), it->second) == left.end())
        throw ParseError(line_no, 1, "'inhibits " + name + "' does not name a reactant");
      fwd.inhibitors.insert(it->second);
    }
    net.reactions.push_back(std::move(fwd));
    if (reversible) {
      if (!inhibited.empty()) throw ParseError(line_no, 1, "'inhibits' is not supported on reversible pairs");
      net.reactions.push_back(make(right, left, backward_label));
    }
    if (end == text.size()) break;
  }
  rebuild_matrices(net);
  return net;
}

/// Text form accepted by parse_network (round-trips to an equal network).
inline std::string serialize(const ReactionNetwork& net) {
  std::ostringstream os;
  os << "@species";
  for (const auto& s : net.species) os << ' ' << s.name;
  os << '\n';
  auto complex = [&](const std::vector<std::size_t>& side) {
    if (side.empty()) return std::string("0");
    std::string s;
    for (std::size_t k = 0; k < side.size(); ++k) {
      if (k) s += " + ";
      s += net.species[side[k]].name;
    }
    return s;
  };
  for (const auto& r : net.reactions) {
    if (!r.label.empty()) os << "rate " << r.label << ": ";
    os << complex(r.reactants) << " -> " << complex(r.products);
    for (auto i : r.inhibitors) os << " inhibits " << net.species[i].name;
    os << '\n';
  }
  return os.str();
}

enum class ViolationKind { NonUnitary, Autocatalysis };

struct Violation {
  ViolationKind kind;
  std::size_t reaction;  // index into net.reactions
  std::size_t species;
  std::string message;
};

/// Existence of an equilibrium is never needed: the analysis works on the
/// shifted system, so it is reported but not checked.
inline constexpr std::string_view kEquilibriumAssumptionNote = "equilibrium existence: not checked (analysis is equilibrium-relative)";

inline std::vector<Violation> validate_assumptions(const ReactionNetwork& net) {
  std::vector<Violation> out;
  for (std::size_t k = 0; k < net.reactions.size(); ++k) {
    const Reaction& r = net.reactions[k];
    std::map<std::size_t, int> in, prod;
    for (auto i : r.reactants) ++in[i];
    for (auto i : r.products) ++prod[i];
    std::set<std::size_t> flagged;
    for (const auto* side : {&in, &prod})
      for (auto [i, c] : *side)
        if (c > 1 && flagged.insert(i).second)
          out.push_back({ViolationKind::NonUnitary, k, i,
                         "reaction on line " + std::to_string(r.line) + ": coefficient " + std::to_string(c) +
                             " for species '" + net.species[i].name + "'"});
    for (auto [i, c] : in)
      if (prod.count(i))
        out.push_back({ViolationKind::Autocatalysis, k, i,
                       "reaction on line " + std::to_string(r.line) + ": species '" + net.species[i].name +
                           "' is both reactant and product"});
  }
  for (std::size_t i = 0; i < net.S.rows(); ++i)
    for (std::size_t j = 0; j < net.S.cols(); ++j)
      if (abs(net.S(i, j)) > 1) {
        std::size_t k = net.internal_reactions[j];
        bool already = false;
        for (const auto& v : out)
          if (v.reaction == k && v.species == i && v.kind == ViolationKind::NonUnitary) already = true;
        if (!already)
          out.push_back({ViolationKind::NonUnitary, k, i,
                         "stoichiometric entry " + net.S(i, j).get_str() + " for species '" + net.species[i].name +
                             "'"});
      }
  return out;
}

}  // namespace plfnet
