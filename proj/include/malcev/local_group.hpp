#ifndef MALCEV_LOCAL_GROUP_HPP_
#define MALCEV_LOCAL_GROUP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "malcev/common.hpp"
#include "malcev/view.hpp"

namespace malcev {

// A finite partial-group structure: carrier with identity, a partial product
// (its domain is Omega) and a partial inversion (its domain is Lambda).
// Tables are dense with a sentinel so every lookup is O(1); elements are
// referred to by carrier index, labels exist only at the I/O boundary.
class FiniteLocalGroup {
 public:
  static constexpr std::int32_t kUndef = -1;

  FiniteLocalGroup(std::vector<Label> labels, std::uint32_t identity,
                   std::vector<std::int32_t> product_table,
                   std::vector<std::int32_t> inverse_table)
      : labels_(std::move(labels)),
        identity_(identity),
        product_(std::move(product_table)),
        inverse_(std::move(inverse_table)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw input_error("empty carrier");
    if (identity_ >= n) throw input_error("identity index out of range");
    if (product_.size() != n * n || inverse_.size() != n)
      throw input_error("table size mismatch");
    for (auto v : product_)
      if (v != kUndef && (v < 0 || static_cast<std::size_t>(v) >= n))
        throw input_error("product table entry out of range");
    for (auto v : inverse_)
      if (v != kUndef && (v < 0 || static_cast<std::size_t>(v) >= n))
        throw input_error("inverse table entry out of range");
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (labels_[i] == labels_[j]) throw input_error("duplicate carrier label");
  }

  // Builds from sparse (x, y, xy) triples and (x, x^-1) pairs, as in the file
  // format. Duplicate conflicting entries are format errors, not axiom
  // violations.
  static FiniteLocalGroup from_triples(
      std::vector<Label> labels, std::uint32_t identity,
      const std::vector<std::array<std::uint32_t, 3>>& products,
      const std::vector<std::array<std::uint32_t, 2>>& inverses) {
    const std::size_t n = labels.size();
    std::vector<std::int32_t> prod(n * n, kUndef), inv(n, kUndef);
    for (const auto& t : products) {
      if (t[0] >= n || t[1] >= n || t[2] >= n)
        throw input_error("product triple index out of range");
      std::int32_t& cell = prod[t[0] * n + t[1]];
      if (cell != kUndef && cell != static_cast<std::int32_t>(t[2]))
        throw input_error("conflicting product entries");
      cell = static_cast<std::int32_t>(t[2]);
    }
    for (const auto& q : inverses) {
      if (q[0] >= n || q[1] >= n) throw input_error("inverse pair index out of range");
      std::int32_t& cell = inv[q[0]];
      if (cell != kUndef && cell != static_cast<std::int32_t>(q[1]))
        throw input_error("conflicting inverse entries");
      cell = static_cast<std::int32_t>(q[1]);
    }
    return FiniteLocalGroup(std::move(labels), identity, std::move(prod), std::move(inv));
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(std::uint32_t i) const { return labels_.at(i); }
  std::uint32_t identity() const { return identity_; }

  std::optional<std::uint32_t> index_of(const Label& l) const {
    for (std::uint32_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == l) return i;
    return std::nullopt;
  }

  bool has_product(std::uint32_t x, std::uint32_t y) const {
    return product_[x * size() + y] != kUndef;
  }
  // kUndef when (x, y) is outside Omega.
  std::int32_t product_index(std::uint32_t x, std::uint32_t y) const {
    return product_[x * size() + y];
  }
  bool has_inverse(std::uint32_t x) const { return inverse_[x] != kUndef; }
  std::int32_t inverse_index(std::uint32_t x) const { return inverse_[x]; }

  std::vector<std::pair<std::uint32_t, std::uint32_t>> omega_pairs() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t x = 0; x < size(); ++x)
      for (std::uint32_t y = 0; y < size(); ++y)
        if (has_product(x, y)) out.emplace_back(x, y);
    return out;
  }

  std::vector<std::uint32_t> lambda_set() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t x = 0; x < size(); ++x)
      if (has_inverse(x)) out.push_back(x);
    return out;
  }

  bool operator==(const FiniteLocalGroup& o) const {
    return labels_ == o.labels_ && identity_ == o.identity_ && product_ == o.product_ &&
           inverse_ == o.inverse_;
  }

 private:
  std::vector<Label> labels_;
  std::uint32_t identity_;
  std::vector<std::int32_t> product_;  // size n*n, row-major
  std::vector<std::int32_t> inverse_;  // size n
};

struct AxiomViolation {
  std::string axiom;
  std::vector<std::uint32_t> witness;  // carrier indices
};

struct AxiomReport {
  bool pass = true;
  std::vector<AxiomViolation> violations;  // one minimal witness per axiom
};

// Validates the finite-discrete local group axioms: identity laws, inversion
// defined at the identity, inverse laws, local associativity, and involution
// of inversion where defined. Witnesses are index-minimal per axiom.
inline AxiomReport check_axioms(const FiniteLocalGroup& g) {
  AxiomReport rep;
  const std::uint32_t n = static_cast<std::uint32_t>(g.size());
  const std::uint32_t e = g.identity();
  auto add = [&rep](std::string axiom, std::vector<std::uint32_t> w) {
    for (const auto& v : rep.violations)
      if (v.axiom == axiom) return;
    rep.pass = false;
    rep.violations.push_back({std::move(axiom), std::move(w)});
  };

  for (std::uint32_t x = 0; x < n; ++x) {
    if (g.product_index(e, x) != static_cast<std::int32_t>(x) ||
        g.product_index(x, e) != static_cast<std::int32_t>(x))
      add("identity-law", {x});
  }
  if (g.inverse_index(e) != static_cast<std::int32_t>(e)) add("identity-inverse", {e});
  for (std::uint32_t x = 0; x < n; ++x) {
    if (!g.has_inverse(x)) continue;
    const std::uint32_t xi = static_cast<std::uint32_t>(g.inverse_index(x));
    if (g.product_index(x, xi) != static_cast<std::int32_t>(e) ||
        g.product_index(xi, x) != static_cast<std::int32_t>(e))
      add("inverse-law", {x});
    if (g.has_inverse(xi) &&
        g.inverse_index(xi) != static_cast<std::int32_t>(x))
      add("inverse-involution", {x});
  }
  for (std::uint32_t x = 0; x < n; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      const std::int32_t xy = g.product_index(x, y);
      if (xy == FiniteLocalGroup::kUndef) continue;
      for (std::uint32_t z = 0; z < n; ++z) {
        const std::int32_t yz = g.product_index(y, z);
        if (yz == FiniteLocalGroup::kUndef) continue;
        const std::int32_t l = g.product_index(static_cast<std::uint32_t>(xy), z);
        const std::int32_t r = g.product_index(x, static_cast<std::uint32_t>(yz));
        if (l != FiniteLocalGroup::kUndef && r != FiniteLocalGroup::kUndef && l != r)
          add("local-associativity", {x, y, z});
      }
    }
  return rep;
}

// Largest symmetric subset of X: {x in X ∩ Λ : x^-1 in X ∩ Λ}. Result sorted
// by carrier index.
inline std::vector<std::uint32_t> symmetrize(const FiniteLocalGroup& g,
                                             std::span<const std::uint32_t> subset) {
  std::vector<bool> in(g.size(), false);
  for (auto x : subset) {
    if (x >= g.size()) throw input_error("subset index out of range");
    in[x] = true;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (!in[x] || !g.has_inverse(x)) continue;
    const std::uint32_t xi = static_cast<std::uint32_t>(g.inverse_index(x));
    if (in[xi] && g.has_inverse(xi)) out.push_back(x);
  }
  return out;
}

// The induced structure on U: products kept only when defined and landing in
// U, inverses kept only when landing in U. Carrier order follows the original
// index order.
inline FiniteLocalGroup restrict_to(const FiniteLocalGroup& g,
                                    std::span<const std::uint32_t> subset) {
  std::vector<std::uint32_t> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  for (auto x : u)
    if (x >= g.size()) throw input_error("subset index out of range");
  std::vector<std::int32_t> new_index(g.size(), FiniteLocalGroup::kUndef);
  for (std::uint32_t i = 0; i < u.size(); ++i) new_index[u[i]] = static_cast<std::int32_t>(i);
  if (new_index[g.identity()] == FiniteLocalGroup::kUndef)
    throw precondition_error("restriction subset must contain the identity");

  const std::size_t m = u.size();
  std::vector<Label> labels;
  labels.reserve(m);
  for (auto x : u) labels.push_back(g.label(x));
  std::vector<std::int32_t> prod(m * m, FiniteLocalGroup::kUndef), inv(m, FiniteLocalGroup::kUndef);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < m; ++j) {
      const std::int32_t z = g.product_index(u[i], u[j]);
      if (z != FiniteLocalGroup::kUndef && new_index[z] != FiniteLocalGroup::kUndef)
        prod[i * m + j] = new_index[z];
    }
    const std::int32_t xi = g.inverse_index(u[i]);
    if (xi != FiniteLocalGroup::kUndef && new_index[xi] != FiniteLocalGroup::kUndef)
      inv[i] = new_index[xi];
  }
  return FiniteLocalGroup(std::move(labels),
                          static_cast<std::uint32_t>(new_index[g.identity()]), std::move(prod),
                          std::move(inv));
}

struct NeatReport {
  bool pass = true;
  // "lambda" failure: element without inverse; "closure" failure: Omega pair
  // (x, y) with (xy, y^-1) outside Omega.
  std::string reason;
  std::vector<std::uint32_t> witness;
};

// Neat: Λ is the whole carrier and (xy, y^-1) ∈ Ω for every (x, y) ∈ Ω.
inline NeatReport is_neat(const FiniteLocalGroup& g) {
  for (std::uint32_t x = 0; x < g.size(); ++x)
    if (!g.has_inverse(x)) return {false, "lambda", {x}};
  for (std::uint32_t x = 0; x < g.size(); ++x)
    for (std::uint32_t y = 0; y < g.size(); ++y) {
      const std::int32_t xy = g.product_index(x, y);
      if (xy == FiniteLocalGroup::kUndef) continue;
      const std::uint32_t yi = static_cast<std::uint32_t>(g.inverse_index(y));
      if (!g.has_product(static_cast<std::uint32_t>(xy), yi))
        return {false, "closure", {x, y}};
    }
  return {};
}

// A finite group given by a total multiplication table; validated on
// construction (totality, identity, inverses, associativity).
class FiniteGroup {
 public:
  FiniteGroup(std::vector<Label> labels, std::uint32_t identity,
              std::vector<std::uint32_t> table)
      : labels_(std::move(labels)), identity_(identity), table_(std::move(table)) {
    const std::size_t n = labels_.size();
    if (n == 0) throw input_error("empty group");
    if (identity_ >= n || table_.size() != n * n) throw input_error("group table size mismatch");
    for (auto v : table_)
      if (v >= n) throw input_error("group table entry out of range");
    for (std::uint32_t x = 0; x < n; ++x)
      if (op(identity_, x) != x || op(x, identity_) != x)
        throw input_error("group identity law fails");
    inverse_.assign(n, n);
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y)
        if (op(x, y) == identity_ && op(y, x) == identity_) {
          inverse_[x] = y;
          break;
        }
      if (inverse_[x] == n) throw input_error("group element without inverse");
    }
    for (std::uint32_t x = 0; x < n; ++x)
      for (std::uint32_t y = 0; y < n; ++y)
        for (std::uint32_t z = 0; z < n; ++z)
          if (op(op(x, y), z) != op(x, op(y, z))) throw input_error("group associativity fails");
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  std::uint32_t identity_index() const { return identity_; }
  std::uint32_t op(std::uint32_t x, std::uint32_t y) const { return table_[x * size() + y]; }
  std::uint32_t inv(std::uint32_t x) const { return inverse_[x]; }

  // The group as a local group with total Omega and Lambda.
  FiniteLocalGroup as_local_group() const {
    const std::size_t n = size();
    std::vector<std::int32_t> prod(n * n), invt(n);
    for (std::size_t i = 0; i < n * n; ++i) prod[i] = static_cast<std::int32_t>(table_[i]);
    for (std::size_t i = 0; i < n; ++i) invt[i] = static_cast<std::int32_t>(inverse_[i]);
    return FiniteLocalGroup(labels_, identity_, std::move(prod), std::move(invt));
  }

 private:
  std::vector<Label> labels_;
  std::uint32_t identity_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
};

// Restriction of a group to a subset, tagged with the ambient group so tests
// can use the ambient product as an oracle.
struct GroupRestriction {
  FiniteLocalGroup local;
  FiniteGroup ambient;
  std::vector<std::uint32_t> to_ambient;  // local index -> ambient index
};

inline GroupRestriction from_group_restriction(const FiniteGroup& h,
                                               std::span<const std::uint32_t> subset) {
  std::vector<std::uint32_t> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  FiniteLocalGroup loc = restrict_to(h.as_local_group(), u);
  return GroupRestriction{std::move(loc), h, std::move(u)};
}

// View adapter over a finite table; element = carrier index.
struct FiniteView {
  const FiniteLocalGroup* g;

  using element = std::uint32_t;
  element identity() const { return g->identity(); }
  std::optional<element> product(element x, element y) const {
    const std::int32_t z = g->product_index(x, y);
    if (z == FiniteLocalGroup::kUndef) return std::nullopt;
    return static_cast<element>(z);
  }
  std::optional<element> inverse(element x) const {
    const std::int32_t z = g->inverse_index(x);
    if (z == FiniteLocalGroup::kUndef) return std::nullopt;
    return static_cast<element>(z);
  }
};
static_assert(LocalGroupView<FiniteView>);

struct FiniteGroupView {
  const FiniteGroup* g;

  using element = std::uint32_t;
  element identity() const { return g->identity_index(); }
  element op(element x, element y) const { return g->op(x, y); }
  element inv(element x) const { return g->inv(x); }
};
static_assert(GroupView<FiniteGroupView>);

struct MorphismReport {
  bool pass = true;
  std::string law;  // "identity", "product", "inverse"
  std::vector<std::uint32_t> witness;
};

// The three local-group morphism laws for a map between finite structures:
// f(1) = 1; (x,y) ∈ Ω ⇒ (fx, fy) ∈ Ω and f(xy) = f(x)f(y);
// x ∈ Λ ⇒ f(x) ∈ Λ and f(x^-1) = f(x)^-1.
inline MorphismReport check_morphism(const FiniteLocalGroup& src, const FiniteLocalGroup& dst,
                                     std::span<const std::uint32_t> f) {
  if (f.size() != src.size()) throw input_error("morphism map size mismatch");
  for (auto v : f)
    if (v >= dst.size()) throw input_error("morphism image out of range");
  if (f[src.identity()] != dst.identity()) return {false, "identity", {src.identity()}};
  for (std::uint32_t x = 0; x < src.size(); ++x)
    for (std::uint32_t y = 0; y < src.size(); ++y) {
      const std::int32_t xy = src.product_index(x, y);
      if (xy == FiniteLocalGroup::kUndef) continue;
      const std::int32_t fxy = dst.product_index(f[x], f[y]);
      if (fxy == FiniteLocalGroup::kUndef ||
          fxy != static_cast<std::int32_t>(f[static_cast<std::uint32_t>(xy)]))
        return {false, "product", {x, y}};
    }
  for (std::uint32_t x = 0; x < src.size(); ++x) {
    const std::int32_t xi = src.inverse_index(x);
    if (xi == FiniteLocalGroup::kUndef) continue;
    const std::int32_t fxi = dst.inverse_index(f[x]);
    if (fxi == FiniteLocalGroup::kUndef ||
        fxi != static_cast<std::int32_t>(f[static_cast<std::uint32_t>(xi)]))
      return {false, "inverse", {x}};
  }
  return {};
}

}  // namespace malcev

#endif  // MALCEV_LOCAL_GROUP_HPP_
