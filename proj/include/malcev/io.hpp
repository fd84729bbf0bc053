#ifndef MALCEV_IO_HPP_
#define MALCEV_IO_HPP_

#include <array>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "malcev/common.hpp"
#include "malcev/instances.hpp"
#include "malcev/local_group.hpp"
#include "malcev/moves.hpp"
#include "malcev/rewrite.hpp"

namespace malcev {

using Json = nlohmann::ordered_json;

inline Label label_from_json(const Json& j) {
  if (j.is_number_integer()) return Label{j.get<std::int64_t>()};
  if (j.is_string()) return Label{j.get<std::string>()};
  throw input_error("labels must be integers or strings");
}

inline Json label_to_json(const Label& l) {
  if (std::holds_alternative<std::int64_t>(l)) return Json(std::get<std::int64_t>(l));
  return Json(std::get<std::string>(l));
}

// {"carrier":[...], "identity":..., "product":[[x,y,xy],...],
//  "inverse":[[x,xi],...]} with labels throughout; undefined entries are
// simply absent. Dumps are canonical (table order), so load/dump round-trips
// bit-exactly.
inline FiniteLocalGroup local_group_from_json(const Json& j) {
  try {
    std::vector<Label> labels;
    for (const auto& l : j.at("carrier")) labels.push_back(label_from_json(l));
    auto find = [&labels](const Label& l) -> std::uint32_t {
      for (std::uint32_t i = 0; i < labels.size(); ++i)
        if (labels[i] == l) return i;
      throw input_error("unknown label " + label_text(l));
    };
    const std::uint32_t identity = find(label_from_json(j.at("identity")));
    std::vector<std::array<std::uint32_t, 3>> prods;
    for (const auto& t : j.at("product")) {
      if (!t.is_array() || t.size() != 3) throw input_error("product entries are triples");
      prods.push_back({find(label_from_json(t[0])), find(label_from_json(t[1])),
                       find(label_from_json(t[2]))});
    }
    std::vector<std::array<std::uint32_t, 2>> invs;
    if (j.contains("inverse"))
      for (const auto& q : j.at("inverse")) {
        if (!q.is_array() || q.size() != 2) throw input_error("inverse entries are pairs");
        invs.push_back({find(label_from_json(q[0])), find(label_from_json(q[1]))});
      }
    return FiniteLocalGroup::from_triples(std::move(labels), identity, prods, invs);
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad local group file: ") + e.what());
  }
}

inline Json local_group_to_json(const FiniteLocalGroup& g) {
  Json j;
  j["carrier"] = Json::array();
  for (const auto& l : g.labels()) j["carrier"].push_back(label_to_json(l));
  j["identity"] = label_to_json(g.label(g.identity()));
  j["product"] = Json::array();
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      const std::int32_t z = g.product_index(x, y);
      if (z == FiniteLocalGroup::kUndef) continue;
      j["product"].push_back(Json::array({label_to_json(g.label(x)), label_to_json(g.label(y)),
                                          label_to_json(g.label(static_cast<std::uint32_t>(z)))}));
    }
  j["inverse"] = Json::array();
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    const std::int32_t xi = g.inverse_index(x);
    if (xi == FiniteLocalGroup::kUndef) continue;
    j["inverse"].push_back(Json::array(
        {label_to_json(g.label(x)), label_to_json(g.label(static_cast<std::uint32_t>(xi)))}));
  }
  return j;
}

// A finite group uses the same file shape with a total product table.
inline FiniteGroup finite_group_from_json(const Json& j) {
  FiniteLocalGroup lg = local_group_from_json(j);
  const std::size_t n = lg.size();
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      const std::int32_t z = lg.product_index(x, y);
      if (z == FiniteLocalGroup::kUndef) throw input_error("group table is not total");
      table[x * n + y] = static_cast<std::uint32_t>(z);
    }
  return FiniteGroup(lg.labels(), lg.identity(), std::move(table));
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw input_error("rationals are written as strings like \"1/2\"");
}

inline Json rational_to_json(const Rational& r) { return Json(format_rational(r)); }

// {"family":"interval","radius":"1"} | {"family":"arc","width":"1/4"} |
// {"family":"padic","p":3,"e":0,"precision":6} |
// {"family":"product","left":{...},"right":{...}}
inline Instance instance_from_json(const Json& j) {
  try {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "interval") return Instance::interval(rational_from_json(j.at("radius")));
    if (fam == "arc") return Instance::arc(rational_from_json(j.at("width")));
    if (fam == "padic")
      return Instance::padic(j.at("p").get<std::uint32_t>(), j.value("e", 0u),
                             j.at("precision").get<std::size_t>());
    if (fam == "product")
      return Instance::product(instance_from_json(j.at("left")),
                               instance_from_json(j.at("right")));
    throw input_error("unknown family: " + fam);
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad instance file: ") + e.what());
  }
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["family"] = family_name(inst.family());
  switch (inst.family()) {
    case Family::interval: j["radius"] = rational_to_json(inst.bound()); break;
    case Family::arc: j["width"] = rational_to_json(inst.bound()); break;
    case Family::padic:
      j["p"] = inst.prime();
      j["e"] = inst.ball_exponent();
      j["precision"] = inst.precision();
      break;
    case Family::product:
      j["left"] = instance_to_json(inst.left());
      j["right"] = instance_to_json(inst.right());
      break;
  }
  return j;
}

// Elements: rationals as strings, p-adic digit vectors as little-endian
// arrays (digit of p^0 first), product elements as two-element arrays.
inline Elem elem_from_json(const Instance& inst, const Json& j) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc: return Elem::rational(rational_from_json(j));
    case Family::padic: {
      if (!j.is_array()) throw input_error("p-adic elements are digit arrays");
      PadicDigits d;
      for (const auto& v : j) {
        const auto digit = v.get<std::uint32_t>();
        if (digit >= inst.prime()) throw input_error("digit exceeds p-1");
        d.d.push_back(static_cast<std::uint16_t>(digit));
      }
      if (d.d.empty()) throw input_error("empty digit vector");
      return Elem::padic(std::move(d));
    }
    case Family::product: {
      if (!j.is_array() || j.size() != 2) throw input_error("product elements are pairs");
      return Elem::pair(elem_from_json(inst.left(), j[0]), elem_from_json(inst.right(), j[1]));
    }
  }
  throw input_error("bad family");
}

inline Json elem_to_json(const Instance& inst, const Elem& x) {
  switch (inst.family()) {
    case Family::interval:
    case Family::arc: return rational_to_json(x.rat());
    case Family::padic: {
      Json a = Json::array();
      for (auto d : x.digits().d) a.push_back(d);
      return a;
    }
    case Family::product:
      return Json::array({elem_to_json(inst.left(), x.left()),
                          elem_to_json(inst.right(), x.right())});
  }
  throw input_error("bad family");
}

// {"family":"interval","scale":"1/2"} | {"family":"padic"} | product pair.
// "arc" is accepted as an alias of "interval" for scaling endomorphisms.
inline Endo endo_from_json(const Json& j) {
  try {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "interval" || fam == "arc") return Endo::scale(rational_from_json(j.at("scale")));
    if (fam == "padic") return Endo::multiply_by_p();
    if (fam == "product")
      return Endo::pair(endo_from_json(j.at("left")), endo_from_json(j.at("right")));
    throw input_error("unknown endo family: " + fam);
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad endo spec: ") + e.what());
  }
}

// {"family":"interval","radius":"1/2","closed":true} |
// {"family":"padic","exponent":2} | product pair.
inline Ball ball_from_json(const Json& j) {
  try {
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "interval" || fam == "arc")
      return Ball::rational_ball(rational_from_json(j.at("radius")), j.value("closed", true));
    if (fam == "padic") return Ball::padic_ball(j.at("exponent").get<std::uint32_t>());
    if (fam == "product")
      return Ball::pair(ball_from_json(j.at("left")), ball_from_json(j.at("right")));
    throw input_error("unknown ball family: " + fam);
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad ball spec: ") + e.what());
  }
}

// Rewrite system dump: ordered rule list over symbol-name words plus the
// completeness flag; reloadable bit-exactly.
inline Json rewrite_system_to_json(const RewriteSystem& rs) {
  Json j;
  j["alphabet"] = rs.symbol_names();
  j["rules"] = Json::array();
  auto word = [&rs](const SymWord& w) {
    Json a = Json::array();
    for (auto c : w) a.push_back(rs.symbol_names().at(static_cast<std::size_t>(c)));
    return a;
  };
  for (const Rule& r : rs.rules()) j["rules"].push_back(Json::array({word(r.lhs), word(r.rhs)}));
  j["complete"] = rs.complete();
  return j;
}

inline RewriteSystem rewrite_system_from_json(const Json& j) {
  try {
    std::vector<std::string> names;
    for (const auto& n : j.at("alphabet")) names.push_back(n.get<std::string>());
    auto sym = [&names](const Json& n) -> char32_t {
      const std::string s = n.get<std::string>();
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == s) return static_cast<char32_t>(i);
      throw input_error("unknown symbol: " + s);
    };
    std::vector<Rule> rules;
    for (const auto& r : j.at("rules")) {
      if (!r.is_array() || r.size() != 2) throw input_error("rules are [lhs, rhs] pairs");
      Rule rule;
      for (const auto& c : r[0]) rule.lhs.push_back(sym(c));
      for (const auto& c : r[1]) rule.rhs.push_back(sym(c));
      rules.push_back(std::move(rule));
    }
    return RewriteSystem(std::move(names), std::move(rules), j.value("complete", false));
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad rules file: ") + e.what());
  }
}

// Move traces: initial word plus per-step move descriptors; the full word
// sequence is reconstructed by replay, so files stay small and honest.
inline Json move_to_json(const FiniteLocalGroup& g, const Move<std::uint32_t>& m) {
  Json j;
  j["kind"] = move_kind_name(m.kind);
  j["pos"] = m.pos;
  if (m.a) j["a"] = label_to_json(g.label(*m.a));
  if (m.b) j["b"] = label_to_json(g.label(*m.b));
  return j;
}

inline Json trace_to_json(const FiniteLocalGroup& g, const MoveTrace<std::uint32_t>& t) {
  Json j;
  j["initial"] = Json::array();
  for (auto x : t.words.front()) j["initial"].push_back(label_to_json(g.label(x)));
  j["moves"] = Json::array();
  for (const auto& m : t.moves) j["moves"].push_back(move_to_json(g, m));
  return j;
}

inline MoveTrace<std::uint32_t> trace_from_json(const FiniteLocalGroup& g, const Json& j) {
  try {
    auto find = [&g](const Json& l) -> std::uint32_t {
      auto idx = g.index_of(label_from_json(l));
      if (!idx) throw input_error("unknown label in trace");
      return *idx;
    };
    MoveTrace<std::uint32_t> t;
    Word<std::uint32_t> w;
    for (const auto& l : j.at("initial")) w.push_back(find(l));
    t.words.push_back(w);
    FiniteView view{&g};
    for (const auto& mj : j.at("moves")) {
      Move<std::uint32_t> m{MoveKind::contract_i, 0, std::nullopt, std::nullopt};
      const std::string kind = mj.at("kind").get<std::string>();
      if (kind == "contract-I")
        m.kind = MoveKind::contract_i;
      else if (kind == "contract-II")
        m.kind = MoveKind::contract_ii;
      else if (kind == "expand-I")
        m.kind = MoveKind::expand_i;
      else if (kind == "expand-II")
        m.kind = MoveKind::expand_ii;
      else
        throw input_error("unknown move kind: " + kind);
      m.pos = mj.at("pos").get<std::size_t>();
      if (mj.contains("a")) m.a = find(mj.at("a"));
      if (mj.contains("b")) m.b = find(mj.at("b"));
      t.words.push_back(apply_move(view, t.words.back(), m));
      t.moves.push_back(m);
    }
    return t;
  } catch (const Json::exception& e) {
    throw input_error(std::string("bad trace file: ") + e.what());
  }
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw input_error("cannot parse " + path + ": " + e.what());
  }
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw input_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace malcev

#endif  // MALCEV_IO_HPP_
