#include "mint/matroid.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <unordered_map>

namespace mint {
namespace detail {

class MatroidImpl {
 public:
  explicit MatroidImpl(int universe) : universe_(universe) {
    if (universe < 0 || universe > kMaxUniverse)
      throw InputError("ground set size must lie in [0, 64]");
  }
  virtual ~MatroidImpl() = default;

  int universe() const { return universe_; }

  bool independent(EdgeSet s) const {
    {
      std::lock_guard lk(mu_);
      auto it = indep_memo_.find(s.bits());
      if (it != indep_memo_.end()) return it->second;
    }
    bool r = independent_raw(s);
    {
      std::lock_guard lk(mu_);
      indep_memo_.emplace(s.bits(), r);
    }
    return r;
  }

  // Greedy over ascending indices; correct for any matroid.
  int rank(EdgeSet s) const {
    {
      std::lock_guard lk(mu_);
      auto it = rank_memo_.find(s.bits());
      if (it != rank_memo_.end()) return it->second;
    }
    EdgeSet acc;
    for (EdgeId e : s)
      if (independent(acc.with(e))) acc.add(e);
    int r = acc.size();
    {
      std::lock_guard lk(mu_);
      rank_memo_.emplace(s.bits(), r);
    }
    return r;
  }

  virtual std::string describe() const = 0;

 protected:
  virtual bool independent_raw(EdgeSet s) const = 0;

 private:
  int universe_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, bool> indep_memo_;
  mutable std::unordered_map<std::uint64_t, int> rank_memo_;
};

namespace {

class UniformImpl : public MatroidImpl {
 public:
  UniformImpl(int n, int r) : MatroidImpl(n), r_(r) {
    if (r < 0) throw InputError("uniform matroid needs a nonnegative rank");
  }
  std::string describe() const override {
    return "uniform(" + std::to_string(universe()) + "," + std::to_string(r_) + ")";
  }

 protected:
  bool independent_raw(EdgeSet s) const override { return s.size() <= r_; }

 private:
  int r_;
};

class PartitionImpl : public MatroidImpl {
 public:
  PartitionImpl(int n, std::vector<EdgeSet> blocks, std::vector<int> caps)
      : MatroidImpl(n), blocks_(std::move(blocks)), caps_(std::move(caps)) {}
  std::string describe() const override {
    return "partition(" + std::to_string(blocks_.size()) + " blocks)";
  }

 protected:
  bool independent_raw(EdgeSet s) const override {
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if ((s & blocks_[i]).size() > caps_[i]) return false;
    return true;
  }

 private:
  std::vector<EdgeSet> blocks_;
  std::vector<int> caps_;
};

class GraphicImpl : public MatroidImpl {
 public:
  GraphicImpl(int vertex_count, std::vector<std::pair<int, int>> endpoints)
      : MatroidImpl(static_cast<int>(endpoints.size())),
        vertex_count_(vertex_count),
        endpoints_(std::move(endpoints)) {
    if (vertex_count < 0) throw InputError("graphic matroid needs a nonnegative vertex count");
    for (auto [u, v] : endpoints_)
      if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
        throw InputError("graphic matroid edge endpoint outside the vertex range");
  }
  std::string describe() const override {
    return "graphic(v=" + std::to_string(vertex_count_) + ",e=" +
           std::to_string(endpoints_.size()) + ")";
  }

 protected:
  bool independent_raw(EdgeSet s) const override {
    std::vector<int> parent(vertex_count_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    for (EdgeId e : s) {
      auto [u, v] = endpoints_[e];
      int ru = find(u), rv = find(v);
      if (ru == rv) return false;  // cycle closed (self-loops included)
      parent[ru] = rv;
    }
    return true;
  }

 private:
  int vertex_count_;
  std::vector<std::pair<int, int>> endpoints_;
};

class LinearGf2Impl : public MatroidImpl {
 public:
  LinearGf2Impl(std::vector<std::uint64_t> columns, int rows)
      : MatroidImpl(static_cast<int>(columns.size())), columns_(std::move(columns)), rows_(rows) {
    if (rows < 0 || rows > 64) throw InputError("gf2 matroid needs between 0 and 64 rows");
    for (auto c : columns_)
      if (rows < 64 && (c >> rows) != 0)
        throw InputError("gf2 column has bits beyond the declared row count");
  }
  std::string describe() const override {
    return "gf2(rows=" + std::to_string(rows_) + ",cols=" + std::to_string(universe()) + ")";
  }

 protected:
  bool independent_raw(EdgeSet s) const override {
    std::uint64_t basis[64] = {};
    for (EdgeId e : s) {
      std::uint64_t v = columns_[e];
      while (v) {
        int b = 63 - std::countl_zero(v);
        if (!basis[b]) {
          basis[b] = v;
          break;
        }
        v ^= basis[b];
      }
      if (!v) return false;
    }
    return true;
  }

 private:
  std::vector<std::uint64_t> columns_;
  int rows_;
};

class DirectSumImpl : public MatroidImpl {
 public:
  struct Part {
    std::shared_ptr<const MatroidImpl> impl;
    std::vector<EdgeId> to_part;  // local slot -> edge label inside the part
    int offset;
  };

  DirectSumImpl(int n, std::vector<Part> parts) : MatroidImpl(n), parts_(std::move(parts)) {}

  std::string describe() const override {
    std::string s = "sum(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += parts_[i].impl->describe();
    }
    return s + ")";
  }

 protected:
  bool independent_raw(EdgeSet s) const override {
    for (const Part& p : parts_) {
      EdgeSet local;
      int width = static_cast<int>(p.to_part.size());
      for (int slot = 0; slot < width; ++slot)
        if (s.contains(p.offset + slot)) local.add(p.to_part[slot]);
      if (!local.empty() && !p.impl->independent(local)) return false;
    }
    return true;
  }

 private:
  std::vector<Part> parts_;
};

class ContractImpl : public MatroidImpl {
 public:
  ContractImpl(std::shared_ptr<const MatroidImpl> inner, EdgeSet base)
      : MatroidImpl(inner->universe()), inner_(std::move(inner)), base_(base) {}

  std::shared_ptr<const MatroidImpl> inner() const { return inner_; }
  EdgeSet base() const { return base_; }

  std::string describe() const override {
    return "contract(" + inner_->describe() + ",base=" + base_.to_string() + ")";
  }

 protected:
  bool independent_raw(EdgeSet s) const override { return inner_->independent(s | base_); }

 private:
  std::shared_ptr<const MatroidImpl> inner_;
  EdgeSet base_;  // a fixed base of the contracted set; the choice cannot matter
};

class DualImpl : public MatroidImpl {
 public:
  DualImpl(std::shared_ptr<const MatroidImpl> inner, EdgeSet ground)
      : MatroidImpl(inner->universe()),
        inner_(std::move(inner)),
        ground_(ground),
        inner_rank_(inner_->rank(ground)) {}

  std::shared_ptr<const MatroidImpl> inner() const { return inner_; }
  EdgeSet dual_ground() const { return ground_; }

  std::string describe() const override { return "dual(" + inner_->describe() + ")"; }

 protected:
  // S is independent in the dual iff the complement keeps full rank.
  bool independent_raw(EdgeSet s) const override {
    return inner_->rank(ground_ - s) == inner_rank_;
  }

 private:
  std::shared_ptr<const MatroidImpl> inner_;
  EdgeSet ground_;
  int inner_rank_;
};

class FunctionImpl : public MatroidImpl {
 public:
  FunctionImpl(int universe, std::function<bool(EdgeSet)> fn, std::string name)
      : MatroidImpl(universe), fn_(std::move(fn)), name_(std::move(name)) {}
  std::string describe() const override { return name_; }

 protected:
  bool independent_raw(EdgeSet s) const override { return fn_(s); }

 private:
  std::function<bool(EdgeSet)> fn_;
  std::string name_;
};

}  // namespace
}  // namespace detail

Matroid::Matroid() : Matroid(std::make_shared<detail::UniformImpl>(0, 0), EdgeSet{}) {}

Matroid::Matroid(std::shared_ptr<const detail::MatroidImpl> impl, EdgeSet ground)
    : impl_(std::move(impl)), ground_(ground) {}

Matroid Matroid::uniform(int n, int rank_bound) {
  return Matroid(std::make_shared<detail::UniformImpl>(n, rank_bound), EdgeSet::range(n));
}

Matroid Matroid::free(int n) { return uniform(n, n); }

Matroid Matroid::partition(std::vector<EdgeSet> blocks, std::vector<int> caps) {
  if (blocks.size() != caps.size())
    throw InputError("partition matroid needs one cap per block");
  EdgeSet seen;
  int total = 0;
  for (const EdgeSet& b : blocks) {
    if (b.intersects(seen)) throw InputError("partition matroid blocks overlap");
    seen |= b;
    total += b.size();
  }
  for (int c : caps)
    if (c < 0) throw InputError("partition matroid caps must be nonnegative");
  if (seen != EdgeSet::range(total))
    throw InputError("partition matroid blocks must cover {0, ..., n-1} exactly");
  return Matroid(std::make_shared<detail::PartitionImpl>(total, std::move(blocks), std::move(caps)),
                 EdgeSet::range(total));
}

Matroid Matroid::graphic(int vertex_count, std::vector<std::pair<int, int>> endpoints) {
  int n = static_cast<int>(endpoints.size());
  if (n > kMaxUniverse) throw InputError("graphic matroid has more than 64 edges");
  return Matroid(std::make_shared<detail::GraphicImpl>(vertex_count, std::move(endpoints)),
                 EdgeSet::range(n));
}

Matroid Matroid::linear_gf2(std::vector<std::uint64_t> columns, int rows) {
  int n = static_cast<int>(columns.size());
  if (n > kMaxUniverse) throw InputError("gf2 matroid has more than 64 columns");
  return Matroid(std::make_shared<detail::LinearGf2Impl>(std::move(columns), rows),
                 EdgeSet::range(n));
}

Matroid Matroid::direct_sum(std::vector<Matroid> parts) {
  int total = 0;
  for (const Matroid& p : parts) total += p.ground().size();
  if (total > kMaxUniverse) throw InputError("direct sum exceeds 64 edges");
  std::vector<detail::DirectSumImpl::Part> out;
  int offset = 0;
  for (const Matroid& p : parts) {
    detail::DirectSumImpl::Part part;
    part.impl = p.impl_;
    part.to_part = p.ground().to_vector();
    part.offset = offset;
    offset += static_cast<int>(part.to_part.size());
    out.push_back(std::move(part));
  }
  return Matroid(std::make_shared<detail::DirectSumImpl>(total, std::move(out)),
                 EdgeSet::range(total));
}

Matroid Matroid::from_function(int universe, EdgeSet ground,
                               std::function<bool(EdgeSet)> independent, std::string name) {
  if (!ground.subset_of(EdgeSet::range(universe)))
    throw InputError("custom oracle ground set outside its universe");
  return Matroid(
      std::make_shared<detail::FunctionImpl>(universe, std::move(independent), std::move(name)),
      ground);
}

Matroid Matroid::dual() const {
  // Double dual collapses back to the original oracle when the ground view
  // has not changed in between.
  if (auto d = std::dynamic_pointer_cast<const detail::DualImpl>(impl_))
    if (d->dual_ground() == ground_) return Matroid(d->inner(), ground_);
  return Matroid(std::make_shared<detail::DualImpl>(impl_, ground_), ground_);
}

Matroid Matroid::deleted(EdgeSet drop) const {
  require_in_ground(drop);
  return Matroid(impl_, ground_ - drop);  // deletion is only a narrower view
}

Matroid Matroid::restricted(EdgeSet keep) const {
  require_in_ground(keep);
  return Matroid(impl_, keep);
}

Matroid Matroid::contracted(EdgeSet contract) const {
  require_in_ground(contract);
  if (contract.empty()) return *this;
  // Greedy base of the contracted set, picked through the current oracle so
  // chained contractions flatten into one rewriting layer.
  EdgeSet base;
  for (EdgeId e : contract)
    if (impl_->independent(base.with(e))) base.add(e);
  if (auto c = std::dynamic_pointer_cast<const detail::ContractImpl>(impl_))
    return Matroid(std::make_shared<detail::ContractImpl>(c->inner(), c->base() | base),
                   ground_ - contract);
  return Matroid(std::make_shared<detail::ContractImpl>(impl_, base), ground_ - contract);
}

Matroid Matroid::onto(EdgeSet keep) const {
  require_in_ground(keep);
  return contracted(ground_ - keep);
}

int Matroid::universe() const { return impl_->universe(); }

void Matroid::require_in_ground(EdgeSet s) const {
  if (!s.subset_of(ground_))
    throw InputError("set " + s.to_string() + " leaves the ground set " + ground_.to_string());
}

bool Matroid::is_independent(EdgeSet s) const {
  require_in_ground(s);
  return impl_->independent(s);
}

int Matroid::rank(EdgeSet s) const {
  require_in_ground(s);
  return impl_->rank(s);
}

int Matroid::rank() const { return impl_->rank(ground_); }

EdgeSet Matroid::span(EdgeSet s) const {
  require_in_ground(s);
  int r = impl_->rank(s);
  EdgeSet out = s;
  for (EdgeId e : ground_ - s)
    if (impl_->rank(s.with(e)) == r) out.add(e);
  return out;
}

bool Matroid::spans(EdgeSet s, EdgeId e) const {
  require_in_ground(s);
  if (!ground_.contains(e)) throw InputError("edge " + std::to_string(e) + " not in the ground set");
  return s.contains(e) || impl_->rank(s.with(e)) == impl_->rank(s);
}

EdgeSet Matroid::loops() const {
  EdgeSet out;
  for (EdgeId e : ground_)
    if (!impl_->independent(EdgeSet::single(e))) out.add(e);
  return out;
}

std::string Matroid::describe() const {
  std::string s = impl_->describe();
  if (ground_ != EdgeSet::range(universe())) s += "|" + ground_.to_string();
  return s;
}

bool is_circuit(const Matroid& m, EdgeSet edges) {
  if (edges.empty() || m.is_independent(edges)) return false;
  for (EdgeId e : edges)
    if (!m.is_independent(edges.without(e))) return false;
  return true;
}

Circuit fundamental_circuit(const Matroid& m, EdgeId e, EdgeSet independent) {
  if (!m.ground().contains(e)) throw InputError("edge not in the ground set");
  if (!m.is_independent(independent)) throw InputError("fundamental circuit of a dependent set");
  if (independent.contains(e)) throw InputError("edge already belongs to the independent set");
  if (m.is_independent(independent.with(e)))
    throw InputError("no circuit: the edge is not spanned by the set");
  // g stays in the circuit exactly when removing it re-opens independence.
  EdgeSet c = EdgeSet::single(e);
  for (EdgeId g : independent)
    if (m.is_independent(independent.with(e).without(g))) c.add(g);
  return Circuit{c};
}

Circuit strong_circuit_eliminate(const Matroid& m, const Circuit& c1, const Circuit& c2,
                                 EdgeId keep, EdgeId remove) {
  if (!is_circuit(m, c1.edges) || !is_circuit(m, c2.edges))
    throw InputError("strong elimination needs two circuits");
  if (!c1.edges.contains(keep) || c2.edges.contains(keep))
    throw InputError("kept edge must lie in the first circuit only");
  if (!c1.edges.contains(remove) || !c2.edges.contains(remove))
    throw InputError("removed edge must lie in both circuits");
  EdgeSet pool = (c1.edges | c2.edges).without(remove).without(keep);
  Circuit out;
  bool found = false;
  for (int k = 0; k <= pool.size() && !found; ++k) {
    for_each_subset_of_size(pool, k, [&](EdgeSet rest) {
      EdgeSet cand = rest.with(keep);
      if (is_circuit(m, cand)) {
        out.edges = cand;
        found = true;
        return false;
      }
      return true;
    });
  }
  if (!found) throw InternalError("strong circuit elimination found no circuit");
  return out;
}

EdgeId circuit_simple_find(const Matroid& m, EdgeSet independent, const Circuit& c, EdgeId e) {
  if (!m.is_independent(independent)) throw InputError("circuit-simple-find needs an independent set");
  if (!is_circuit(m, c.edges)) throw InputError("circuit-simple-find needs a circuit");
  if (!c.edges.subset_of(m.span(independent)))
    throw InputError("circuit must lie in the span of the independent set");
  if (!independent.contains(e) || !c.edges.contains(e))
    throw InputError("target edge must lie in both the set and the circuit");

  Circuit cur = c;
  while (true) {
    EdgeSet outside = cur.edges - independent;
    if (outside.empty())
      throw InternalError("circuit-simple-find ran out of candidates");
    for (EdgeId f : outside)
      if (fundamental_circuit(m, f, independent).edges.contains(e)) return f;
    // No candidate qualifies yet; eliminate the smallest one and recurse on a
    // circuit with strictly fewer edges outside the independent set.
    EdgeId g = outside.first();
    Circuit cg = fundamental_circuit(m, g, independent);
    cur = strong_circuit_eliminate(m, cur, cg, e, g);
  }
}

}  // namespace mint
