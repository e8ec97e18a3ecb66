#include "meanorder/poset.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <numeric>
#include <sstream>

#include "meanorder/errors.hpp"

namespace meanorder {

Poset::Poset(std::vector<std::string> elements, std::vector<std::uint8_t> leq_matrix)
    : names_(std::move(elements)), matrix_(std::move(leq_matrix)) {
  if (names_.empty()) throw DomainError("poset needs at least one element");
  if (names_.size() > kMaxElements)
    throw DomainError("poset too large (max " + std::to_string(kMaxElements) + " elements)");
  if (matrix_.size() != names_.size() * names_.size())
    throw DomainError("relation matrix size does not match element count");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw DomainError("duplicate element id '" + names_[i] + "'");
  validate();
  build_masks();
}

void Poset::validate() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    if (!leq(a, a))
      throw DomainError("relation not reflexive at '" + names_[a] + "'");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && leq(a, b) && leq(b, a))
        throw DomainError("relation not antisymmetric on '" + names_[a] + "', '" + names_[b] + "'");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!leq(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq(b, c) && !leq(a, c))
          throw DomainError("relation not transitive on '" + names_[a] + "' <= '" +
                            names_[b] + "' <= '" + names_[c] + "'");
    }
}

void Poset::build_masks() {
  const std::size_t n = size();
  below_.assign(n, 0);
  above_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (leq(y, x)) below_[x] |= ElementSet{1} << y;
      if (leq(x, y)) above_[x] |= ElementSet{1} << y;
    }
}

Poset Poset::from_pairs(std::vector<std::string> elements,
                        const std::vector<std::pair<std::string, std::string>>& le_pairs) {
  const std::size_t n = elements.size();
  if (n == 0) throw DomainError("poset needs at least one element");
  std::vector<std::uint8_t> m(n * n, 0);
  auto idx = [&](const std::string& name) -> std::size_t {
    auto it = std::find(elements.begin(), elements.end(), name);
    if (it == elements.end()) throw DomainError("unknown element id '" + name + "'");
    return static_cast<std::size_t>(it - elements.begin());
  };
  for (const auto& [a, b] : le_pairs) m[idx(a) * n + idx(b)] = 1;
  return Poset(std::move(elements), std::move(m));
}

Poset Poset::parse(std::istream& in) {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> pairs;
  bool have_elements = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head)) continue;
    if (head == "elements:") {
      if (have_elements) throw DomainError("duplicate elements: line");
      std::string name;
      while (ls >> name) elements.push_back(name);
      have_elements = true;
    } else if (head == "le:") {
      std::string a, b, extra;
      if (!(ls >> a >> b) || (ls >> extra))
        throw DomainError("line " + std::to_string(lineno) + ": expected 'le: x y'");
      pairs.emplace_back(a, b);
    } else {
      throw DomainError("line " + std::to_string(lineno) + ": unknown directive '" + head + "'");
    }
  }
  if (!have_elements) throw DomainError("missing elements: line");
  return from_pairs(std::move(elements), pairs);
}

Poset Poset::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

Poset Poset::chain(std::size_t n) {
  std::vector<std::string> names(n);
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    names[i] = std::to_string(i + 1);
    for (std::size_t j = i; j < n; ++j) m[i * n + j] = 1;
  }
  return Poset(std::move(names), std::move(m));
}

Poset Poset::diamond() {
  return from_pairs({"bot", "a", "b", "top"},
                    {{"bot", "bot"}, {"a", "a"}, {"b", "b"}, {"top", "top"},
                     {"bot", "a"}, {"bot", "b"}, {"bot", "top"},
                     {"a", "top"}, {"b", "top"}});
}

Poset Poset::random(std::size_t n, double edge_prob, Rng& rng) {
  if (n == 0 || n > kMaxElements) throw DomainError("bad random poset size");
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  // indices already form a topological order; close transitively as we go
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (rng.uniform01() < edge_prob)
        for (std::size_t k = 0; k <= i; ++k)
          if (m[k * n + i]) m[k * n + j] = 1;
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = "e" + std::to_string(i);
  return Poset(std::move(names), std::move(m));
}

std::size_t Poset::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw DomainError("unknown element id '" + std::string(name) + "'");
}

ElementSet Poset::all() const {
  return size() == kMaxElements ? ~ElementSet{0} : (ElementSet{1} << size()) - 1;
}

Poset Poset::restrict(ElementSet members) const {
  if ((members & ~all()) != 0) throw DomainError("restriction members outside poset");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < size(); ++i)
    if (members & (ElementSet{1} << i)) keep.push_back(i);
  if (keep.empty()) throw DomainError("restriction to empty set");
  const std::size_t k = keep.size();
  std::vector<std::string> names(k);
  std::vector<std::uint8_t> m(k * k, 0);
  for (std::size_t a = 0; a < k; ++a) {
    names[a] = names_[keep[a]];
    for (std::size_t b = 0; b < k; ++b) m[a * k + b] = leq(keep[a], keep[b]) ? 1 : 0;
  }
  return Poset(std::move(names), std::move(m));
}

std::string Poset::set_to_string(ElementSet s) const {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < size(); ++i)
    if (s & (ElementSet{1} << i)) {
      if (!first) out += ",";
      out += names_[i];
      first = false;
    }
  return out + "}";
}

SubsetView::SubsetView(const Poset& p, ElementSet m) : parent(&p), members(m) {
  if ((m & ~p.all()) != 0) throw DomainError("subset members outside parent poset");
}

ElementSet bracket(const SubsetView& space, std::size_t lower, std::size_t upper) {
  const Poset& p = *space.parent;
  if (lower >= p.size() || upper >= p.size()) throw DomainError("bracket endpoint out of range");
  return space.members & p.above(lower) & p.below(upper);
}

ElementSet gi_set(const SubsetView& inner) {
  const Poset& p = *inner.parent;
  ElementSet out = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if ((inner.members & p.below(x)) && (inner.members & p.above(x)))
      out |= ElementSet{1} << x;
  return out;
}

IntervalTypeVerdict is_interval_type(const SubsetView& inner) {
  const ElementSet hull = gi_set(inner);
  const ElementSet extra = hull & ~inner.members;
  if (extra == 0) return {true, std::nullopt};
  return {false, static_cast<std::size_t>(std::countr_zero(extra))};
}

ElementSet down_set(const Poset& p, ElementSet s) {
  ElementSet out = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.above(x) & s) out |= ElementSet{1} << x;
  return out;
}

ElementSet up_set(const Poset& p, ElementSet s) {
  ElementSet out = 0;
  for (std::size_t x = 0; x < p.size(); ++x)
    if (p.below(x) & s) out |= ElementSet{1} << x;
  return out;
}

namespace {

ElementSet random_subset(const Poset& p, Rng& rng) {
  return rng.next() & p.all();
}

// Random interval-type set: the gi hull of a random subset (gi is
// idempotent, so hulls are exactly the interval-type sets).
ElementSet random_interval_type(const Poset& p, Rng& rng) {
  return gi_set(SubsetView(p, random_subset(p, rng)));
}

void record(ClosureReport& rep, LawRecord rec) {
  if (!rec.ok) ++rep.violations;
  if (rec.strict_inclusion) ++rep.strict_inclusions;
  rep.records.push_back(std::move(rec));
}

}  // namespace

ClosureReport check_closure_laws(const Poset& ambient, std::size_t trials,
                                 std::uint64_t seed, std::uint64_t poset_seed) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  ClosureReport rep;
  const std::size_t n = ambient.size();
  for (std::uint64_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));

    // (a) intersection of two interval-type sets
    {
      const ElementSet i1 = random_interval_type(ambient, rng);
      const ElementSet i2 = random_interval_type(ambient, rng);
      const auto v = is_interval_type(SubsetView(ambient, i1 & i2));
      LawRecord rec{"intersection", poset_seed, t, v.interval_type, false, ""};
      if (!v.interval_type)
        rec.witness = ambient.set_to_string(i1) + " ∩ " + ambient.set_to_string(i2) +
                      " misses " + ambient.name(*v.witness);
      record(rep, rec);
    }

    // (b) union of an increasing chain of interval-type sets
    {
      ElementSet chain = random_interval_type(ambient, rng);
      ElementSet un = chain;
      const int len = rng.uniform_int(2, 5);
      for (int k = 1; k < len; ++k) {
        const ElementSet grow = chain | (ElementSet{1} << rng.uniform_int(0, static_cast<int>(n) - 1));
        chain = gi_set(SubsetView(ambient, grow));
        un |= chain;
      }
      const auto v = is_interval_type(SubsetView(ambient, un));
      LawRecord rec{"chain-union", poset_seed, t, v.interval_type, false, ""};
      if (!v.interval_type)
        rec.witness = "union " + ambient.set_to_string(un) + " misses " + ambient.name(*v.witness);
      record(rep, rec);
    }

    // (c) restriction of an interval-type set to a subfamily
    {
      const ElementSet itype = random_interval_type(ambient, rng);
      ElementSet y = random_subset(ambient, rng);
      if (y == 0) y = ambient.all();
      const Poset sub = ambient.restrict(y);
      ElementSet restricted = 0;
      for (std::size_t i = 0; i < sub.size(); ++i)
        if (itype & (ElementSet{1} << ambient.index_of(sub.name(i))))
          restricted |= ElementSet{1} << i;
      const auto v = is_interval_type(SubsetView(sub, restricted));
      LawRecord rec{"restriction", poset_seed, t, v.interval_type, false, ""};
      if (!v.interval_type)
        rec.witness = "I=" + ambient.set_to_string(itype) + " Y=" + ambient.set_to_string(y) +
                      " misses " + sub.name(*v.witness);
      record(rep, rec);
    }

    // (d) bracket(p,q) ∪ bracket(q,r) ⊆ bracket(p,r) for p <= q <= r
    {
      const auto pi = static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(n) - 1));
      const ElementSet above_p = ambient.above(pi);
      std::vector<std::size_t> qs;
      for (std::size_t i = 0; i < n; ++i)
        if (above_p & (ElementSet{1} << i)) qs.push_back(i);
      const std::size_t qi = qs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(qs.size()) - 1))];
      std::vector<std::size_t> rs;
      for (std::size_t i = 0; i < n; ++i)
        if (ambient.above(qi) & (ElementSet{1} << i)) rs.push_back(i);
      const std::size_t ri = rs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(rs.size()) - 1))];

      const SubsetView whole(ambient, ambient.all());
      const ElementSet left = bracket(whole, pi, qi) | bracket(whole, qi, ri);
      const ElementSet right = bracket(whole, pi, ri);
      const bool ok = (left & ~right) == 0;
      LawRecord rec{"bracket-subadditivity", poset_seed, t, ok, ok && left != right, ""};
      if (!ok) {
        const auto bad = static_cast<std::size_t>(std::countr_zero(left & ~right));
        rec.witness = ambient.name(bad) + " in union but outside [" + ambient.name(pi) +
                      "," + ambient.name(ri) + "]";
      }
      record(rep, rec);
    }
  }
  return rep;
}

}  // namespace meanorder
