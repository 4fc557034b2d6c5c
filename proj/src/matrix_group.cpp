#include "excoll/matrix_group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "excoll/error.hpp"
#include "excoll/limits.hpp"

namespace excoll {

std::size_t FiniteMatrixGroup::power(std::size_t a, long k) const {
  long ord = element_order_[a];
  long e = ((k % ord) + ord) % ord;
  std::size_t out = 0;
  for (long i = 0; i < e; ++i) out = multiply(out, a);
  return out;
}

std::size_t FiniteMatrixGroup::power_class(std::size_t cls, long k) const {
  return class_of(power(class_representative(cls), k));
}

std::optional<std::size_t> FiniteMatrixGroup::index_of(const CycMatrix& m) const {
  if (m.rows() != dimension_ || m.cols() != dimension_) return std::nullopt;
  long c = std::lcm(m.conductor(), conductor_);
  if (c != conductor_) {
    // An entry outside Q(zeta_N) cannot be a group element unless it reduces.
    CycMatrix lifted = m.embed(c);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i].embed(c) == lifted) return i;
    }
    return std::nullopt;
  }
  auto it = index_.find(m.embed(conductor_).key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FiniteMatrixGroup generate_group(const std::vector<CycMatrix>& generators, std::size_t dimension,
                                 long order_cap) {
  if (order_cap <= 0) order_cap = limits::order_cap();
  FiniteMatrixGroup g;
  if (generators.empty()) {
    g.dimension_ = dimension == 0 ? 1 : dimension;
  } else {
    g.dimension_ = generators.front().rows();
  }
  long conductor = 1;
  for (const auto& gen : generators) {
    if (!gen.square() || gen.rows() != g.dimension_) {
      throw Error(Errc::InvalidParameter, "generators must be square of equal size");
    }
    conductor = lcm_conductor(conductor, gen.conductor());
  }
  g.conductor_ = conductor;
  for (const auto& gen : generators) {
    CycMatrix lifted = gen.embed(conductor);
    (void)lifted.inverse();  // throws NotInvertible
    g.generators_.push_back(std::move(lifted));
  }

  // Breadth-first closure under right multiplication by the generators.
  std::vector<CycMatrix> elems{CycMatrix::identity(g.dimension_).embed(conductor)};
  std::unordered_map<std::string, std::size_t> index{{elems.front().key(), 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& gen : g.generators_) {
      CycMatrix y = elems[x] * gen;
      std::string key = y.key();
      if (index.count(key)) continue;
      if (static_cast<long>(elems.size()) >= order_cap) {
        throw Error(Errc::OrderCapExceeded,
                    "group order exceeds cap " + std::to_string(order_cap));
      }
      index.emplace(std::move(key), elems.size());
      elems.push_back(std::move(y));
      queue.push_back(elems.size() - 1);
    }
  }

  const std::size_t n = elems.size();
  std::vector<std::size_t> mult(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find((elems[a] * elems[b]).key());
      if (it == index.end()) throw Error(Errc::InvalidParameter, "closure is not a group");
      mult[a * n + b] = it->second;
    }
  }
  std::vector<long> order(n, 1);
  for (std::size_t a = 0; a < n; ++a) {
    std::size_t p = a;
    while (p != 0) {
      p = mult[p * n + a];
      ++order[a];
    }
  }

  std::vector<std::string> keys(n);
  for (std::size_t a = 0; a < n; ++a) keys[a] = elems[a].key();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (order[a] != order[b]) return order[a] < order[b];
    return keys[a] < keys[b];
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[perm[i]] = i;

  g.elements_.reserve(n);
  g.element_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.elements_.push_back(elems[perm[i]]);
    g.element_order_[i] = order[perm[i]];
    g.index_.emplace(keys[perm[i]], i);
  }
  g.mult_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      g.mult_[rank[a] * n + rank[b]] = rank[mult[a * n + b]];
    }
  }
  g.inverse_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (g.mult_[a * n + b] == 0) {
        g.inverse_[a] = b;
        break;
      }
    }
  }
  for (const auto& gen : g.generators_) g.generator_elements_.push_back(g.index_.at(gen.key()));

  // Conjugacy classes by brute force.
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(n, false);
  for (std::size_t a = 0; a < n; ++a) {
    if (seen[a]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < n; ++h) {
      std::size_t c = g.multiply(g.multiply(h, a), g.inverse_[h]);
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  std::vector<std::string> trace_keys;
  for (const auto& cls : classes) trace_keys.push_back(g.elements_[cls.front()].trace().to_string());
  std::vector<std::size_t> cperm(classes.size());
  std::iota(cperm.begin(), cperm.end(), 0);
  std::sort(cperm.begin(), cperm.end(), [&](std::size_t a, std::size_t b) {
    std::size_t ra = classes[a].front();
    std::size_t rb = classes[b].front();
    if (g.element_order_[ra] != g.element_order_[rb]) {
      return g.element_order_[ra] < g.element_order_[rb];
    }
    if (trace_keys[a] != trace_keys[b]) return trace_keys[a] < trace_keys[b];
    return g.elements_[ra].key() < g.elements_[rb].key();
  });
  g.class_of_.resize(n);
  for (std::size_t i = 0; i < cperm.size(); ++i) {
    for (auto e : classes[cperm[i]]) g.class_of_[e] = i;
    g.classes_.push_back(std::move(classes[cperm[i]]));
  }

  // Spanning tree in the canonical numbering.
  g.tree_.assign(n, std::nullopt);
  std::vector<bool> reached(n, false);
  reached[0] = true;
  std::deque<std::size_t> bfs{0};
  while (!bfs.empty()) {
    std::size_t x = bfs.front();
    bfs.pop_front();
    for (std::size_t s = 0; s < g.generators_.size(); ++s) {
      std::size_t y = g.multiply(x, g.generator_elements_[s]);
      if (reached[y]) continue;
      reached[y] = true;
      g.tree_[y] = FiniteMatrixGroup::TreeEdge{x, s};
      bfs.push_back(y);
    }
  }
  return g;
}

std::vector<CycMatrix> extend_to_elements(const FiniteMatrixGroup& group,
                                          const std::vector<CycMatrix>& generator_images) {
  if (generator_images.size() != group.generators().size()) {
    throw Error(Errc::InvalidParameter, "one image per generator required");
  }
  std::size_t dim = generator_images.empty() ? 1 : generator_images.front().rows();
  for (const auto& m : generator_images) {
    if (!m.square() || m.rows() != dim) {
      throw Error(Errc::InvalidParameter, "generator images must be square of equal size");
    }
  }
  std::vector<CycMatrix> out(group.order());
  out[0] = CycMatrix::identity(dim);
  // The tree is a BFS tree, so parents always precede children in BFS order.
  std::deque<std::size_t> bfs{0};
  std::vector<std::vector<std::size_t>> children(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) {
    if (const auto& e = group.spanning_tree()[i]) children[e->parent].push_back(i);
  }
  while (!bfs.empty()) {
    std::size_t x = bfs.front();
    bfs.pop_front();
    for (auto y : children[x]) {
      out[y] = out[x] * generator_images[group.spanning_tree()[y]->generator];
      bfs.push_back(y);
    }
  }
  return out;
}

namespace {

CycMatrix diag(const std::vector<CycNum>& entries) {
  CycMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

CycMatrix one_by_one(const CycNum& x) { return CycMatrix::scalar(1, x); }

Irrep make_irrep(const FiniteMatrixGroup& g, std::size_t index,
                 const std::vector<CycMatrix>& gen_images) {
  Irrep rho;
  rho.index = index;
  rho.dim = gen_images.empty() ? 1 : gen_images.front().rows();
  rho.name = "rho_" + std::to_string(index);
  rho.matrices = extend_to_elements(g, gen_images);
  return rho;
}

GroupWithIrreps cyclic_diagonal(const CyclicDiagonal& spec) {
  if (spec.m < 1) throw Error(Errc::InvalidParameter, "cyclic_diagonal: m must be >= 1");
  if (spec.weights.empty()) throw Error(Errc::InvalidParameter, "cyclic_diagonal: empty weights");
  long g = spec.m;
  for (long w : spec.weights) g = std::gcd(g, ((w % spec.m) + spec.m) % spec.m);
  if (spec.m > 1 && g != 1) {
    throw Error(Errc::InvalidParameter,
                "cyclic_diagonal: weights generate a proper subgroup of Z/m");
  }
  std::vector<CycNum> entries;
  for (long w : spec.weights) entries.push_back(CycNum::zeta(spec.m, w));
  GroupWithIrreps out{generate_group({diag(entries)}), {}, {}};
  for (long j = 0; j < spec.m; ++j) {
    out.irreps.push_back(
        make_irrep(out.group, static_cast<std::size_t>(j), {one_by_one(CycNum::zeta(spec.m, j))}));
  }
  std::string w;
  for (std::size_t i = 0; i < spec.weights.size(); ++i) {
    w += (i ? "," : "") + std::to_string(spec.weights[i]);
  }
  out.description = "cyclic_diagonal(m=" + std::to_string(spec.m) + ", weights=[" + w + "])";
  return out;
}

GroupWithIrreps binary_dihedral(const BinaryDihedral& spec) {
  if (spec.l < 1) throw Error(Errc::InvalidParameter, "binary_dihedral: l must be >= 1");
  const long l = spec.l;
  const long n2l = 2 * l;
  CycMatrix a = diag({CycNum::zeta(n2l, 1), CycNum::zeta(n2l, -1)});
  CycMatrix b(2, 2);
  b(0, 1) = CycNum(1);
  b(1, 0) = CycNum(-1);
  GroupWithIrreps out{generate_group({a, b}), {}, {}};
  const auto& g = out.group;

  std::size_t idx = 0;
  out.irreps.push_back(make_irrep(g, idx++, {one_by_one(1), one_by_one(1)}));
  out.irreps.push_back(make_irrep(g, idx++, {one_by_one(1), one_by_one(-1)}));
  for (long k = 1; k < l; ++k) {
    CycMatrix ak = diag({CycNum::zeta(n2l, k), CycNum::zeta(n2l, -k)});
    CycMatrix bk(2, 2);
    bk(0, 1) = CycNum(1);
    bk(1, 0) = CycNum(k % 2 == 1 ? -1 : 1);
    out.irreps.push_back(make_irrep(g, idx++, {ak, bk}));
  }
  CycNum c = l % 2 == 0 ? CycNum(1) : CycNum::zeta(4, 1);
  out.irreps.push_back(make_irrep(g, idx++, {one_by_one(-1), one_by_one(c)}));
  out.irreps.push_back(make_irrep(g, idx++, {one_by_one(-1), one_by_one(-c)}));
  out.description = "binary_dihedral(l=" + std::to_string(l) + ")";
  return out;
}

}  // namespace

GroupWithIrreps builtin_group(const BuiltinKind& kind) {
  return std::visit(
      [](const auto& spec) -> GroupWithIrreps {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, CyclicDiagonal>) {
          return cyclic_diagonal(spec);
        } else {
          return binary_dihedral(spec);
        }
      },
      kind);
}

CentralSubgroupInfo central_scalar_subgroup(const FiniteMatrixGroup& group, long d) {
  if (d < 1) throw Error(Errc::InvalidParameter, "d must be >= 1");
  CentralSubgroupInfo info;
  info.d = d;
  for (std::size_t i = 0; i < group.order(); ++i) {
    auto s = group.element(i).scalar_value();
    if (!s) continue;
    if (d % group.element_order(i) != 0) continue;  // zeta^d = 1 iff ord | d
    info.elements.push_back(i);
  }
  info.e = static_cast<long>(info.elements.size());
  // T_d is cyclic: pick the first element of maximal order as generator.
  info.generator_element = 0;
  for (auto i : info.elements) {
    if (group.element_order(i) == info.e) {
      info.generator_element = i;
      break;
    }
  }
  info.generator = *group.element(info.generator_element).scalar_value();
  return info;
}

}  // namespace excoll
