#include "excoll/collections.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <set>

#include "excoll/error.hpp"

namespace excoll {

namespace {

std::size_t next_uid() {
  static std::atomic<std::size_t> counter{1};
  return counter.fetch_add(1);
}

// Ext tables keyed by object uid pairs; uids are never reused.
struct ExtCache {
  std::mutex mu;
  std::map<std::pair<std::size_t, std::size_t>, std::map<long, long>> tables;
};

ExtCache& ext_cache() {
  static ExtCache cache;
  return cache;
}

std::string fmt_ext(const std::map<long, long>& dims) {
  std::string out;
  for (const auto& [k, v] : dims) {
    if (!out.empty()) out += ", ";
    out += "Ext^" + std::to_string(k) + " = " + std::to_string(v);
  }
  return out.empty() ? "0" : out;
}

IntMatrix congruence(const IntMatrix& u, const IntMatrix& g) {
  const std::size_t n = g.size();
  IntMatrix gu(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) gu[i][j] += g[i][k] * u[k][j];
    }
  }
  IntMatrix out(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) out[i][j] += u[k][i] * gu[k][j];
    }
  }
  return out;
}

KClass twist_kclass(const EquivariantSetting& s, const KClass& k, long t) {
  KClass out = KClass::zero(s);
  for (std::size_t i = 0; i < k.twists(); ++i) {
    for (std::size_t j = 0; j < k.irreps(); ++j) {
      if (k.at(i, j) == 0) continue;
      out += k.at(i, j) * koszul_reduce(s, static_cast<long>(i) + t, j);
    }
  }
  return out;
}

}  // namespace

CollectionObject CollectionObject::make(std::string label, EqComplex c) {
  KClass k = c.kclass();
  return CollectionObject{std::move(label), std::move(c), std::move(k), next_uid()};
}

CollectionObject CollectionObject::k_only(std::string label, KClass k) {
  return CollectionObject{std::move(label), std::nullopt, std::move(k), next_uid()};
}

ExcCollection::ExcCollection(EquivariantSetting setting, std::vector<CollectionObject> objects)
    : setting_(std::move(setting)), objects_(std::move(objects)) {}

std::vector<std::string> ExcCollection::labels() const {
  std::vector<std::string> out;
  for (const auto& o : objects_) out.push_back(o.label);
  return out;
}

bool ExcCollection::has_complexes() const {
  return std::all_of(objects_.begin(), objects_.end(),
                     [](const CollectionObject& o) { return o.complex.has_value(); });
}

const std::map<long, long>& ExcCollection::ext(std::size_t i, std::size_t j) const {
  const auto& a = objects_.at(i);
  const auto& b = objects_.at(j);
  if (!a.complex || !b.complex) {
    throw Error(Errc::InvalidComplex, "no complex for " + (a.complex ? b.label : a.label) +
                                          " (K-class only)");
  }
  auto& cache = ext_cache();
  const auto key = std::make_pair(a.uid, b.uid);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.tables.find(key);
    if (it != cache.tables.end()) return it->second;
  }
  auto dims = ext_dims(*a.complex, *b.complex);
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.tables.emplace(key, std::move(dims)).first->second;
}

long long ExcCollection::euler(std::size_t i, std::size_t j) const {
  if (objects_[i].complex && objects_[j].complex) {
    try {
      return euler_from_ext(ext(i, j));
    } catch (const Error& e) {
      if (e.code() != Errc::WindowViolation) throw;
    }
  }
  return euler_pairing(setting_, objects_[i].kclass, objects_[j].kclass);
}

IntMatrix ExcCollection::gram() const {
  IntMatrix g(size(), std::vector<long long>(size(), 0));
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) g[i][j] = euler(i, j);
  }
  return g;
}

IntMatrix ExcCollection::gram_from_kclasses() const {
  IntMatrix g(size(), std::vector<long long>(size(), 0));
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      g[i][j] = euler_pairing(setting_, objects_[i].kclass, objects_[j].kclass);
    }
  }
  return g;
}

IntMatrix ExcCollection::hom_dims() const {
  IntMatrix h(size(), std::vector<long long>(size(), 0));
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      const auto& e = ext(i, j);
      auto it = e.find(0);
      h[i][j] = it == e.end() ? 0 : it->second;
    }
  }
  return h;
}

ExcCollection ExcCollection::subcollection(const std::vector<std::size_t>& keep,
                                           const std::string& why) const {
  std::vector<CollectionObject> objs;
  std::set<std::size_t> kept(keep.begin(), keep.end());
  std::string removed;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!kept.count(i) && !why.empty()) removed += (removed.empty() ? "" : ", ") + objects_[i].label;
  }
  for (auto i : keep) objs.push_back(objects_.at(i));
  ExcCollection out(setting_, std::move(objs));
  out.provenance = provenance;
  out.mutations = mutations;
  if (!why.empty()) {
    out.provenance.push_back({why, removed.empty() ? "kept all objects" : "removed " + removed});
  }
  return out;
}

bool is_unitriangular(const IntMatrix& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i][i] != 1) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (g[i][j] != 0) return false;
    }
  }
  return true;
}

BigInt kclass_determinant(const ExcCollection& coll) {
  const std::size_t n = coll.size();
  if (n == 0) return 1;
  if (coll.object(0).kclass.rank() != n) {
    throw Error(Errc::InvalidParameter, "K-class matrix is not square");
  }
  // Bareiss fraction-free elimination.
  std::vector<std::vector<BigInt>> m(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = static_cast<long>(coll.object(i).kclass[j]);
  }
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

ExcCollection beilinson_collection(const EquivariantSetting& s) {
  std::vector<CollectionObject> objs;
  for (long i = 0; i <= s.n(); ++i) {
    for (std::size_t j = 0; j < s.num_irreps(); ++j) {
      EqLineBundle l{i, j};
      objs.push_back(CollectionObject::make(l.label(), EqComplex::from_line_bundle(s, l)));
    }
  }
  ExcCollection out(s, std::move(objs));
  out.provenance.push_back({"beilinson", std::to_string(out.size()) + " objects O(i)@rho_j"});
  return out;
}

CheckReport check_exceptional(const ExcCollection& coll) {
  try {
    for (std::size_t i = 0; i < coll.size(); ++i) {
      if (!coll.object(i).complex) {
        return {false, coll.object(i).label + " is known only by its K-class"};
      }
      const auto& self = coll.ext(i, i);
      if (self != std::map<long, long>{{0, 1}}) {
        return {false, coll.object(i).label + " is not exceptional: " + fmt_ext(self)};
      }
    }
    for (std::size_t i = 0; i < coll.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        const auto& back = coll.ext(i, j);
        if (!back.empty()) {
          return {false, "backward morphisms from " + coll.object(i).label + " to " +
                             coll.object(j).label + ": " + fmt_ext(back)};
        }
      }
    }
  } catch (const Error& e) {
    return {false, e.what()};
  }
  return {true, "exceptional: " + std::to_string(coll.size()) + " objects"};
}

CheckReport check_strong(const ExcCollection& coll) {
  CheckReport exc = check_exceptional(coll);
  if (!exc.pass) return exc;
  for (std::size_t i = 0; i < coll.size(); ++i) {
    for (std::size_t j = i + 1; j < coll.size(); ++j) {
      const auto& fwd = coll.ext(i, j);
      for (const auto& [k, v] : fwd) {
        if (k != 0) {
          return {false, "not strong: from " + coll.object(i).label + " to " +
                             coll.object(j).label + ": " + fmt_ext(fwd)};
        }
      }
    }
  }
  return {true, "strong: " + std::to_string(coll.size()) + " objects"};
}

ExcCollection move_left(const ExcCollection& coll, std::size_t from, std::size_t to) {
  if (to > from || from >= coll.size()) throw Error(Errc::InvalidParameter, "bad move_left range");
  ExcCollection cur = coll;
  const auto& s = coll.setting();
  for (std::size_t pos = from; pos > to; --pos) {
    const CollectionObject x = cur.object(pos - 1);
    const CollectionObject e = cur.object(pos);
    MutationRecord rec;
    rec.position = pos - 1;
    rec.moved = e.label;
    rec.passed = x.label;
    IntMatrix g_old = cur.gram();
    rec.chi = cur.euler(pos - 1, pos);

    CollectionObject result = x;
    bool nontrivial = true;
    if (x.complex && e.complex) {
      try {
        nontrivial = !cur.ext(pos - 1, pos).empty();
        if (nontrivial) {
          EqComplex r = right_mutation(*x.complex, *e.complex);
          result = CollectionObject::make("R_{" + e.label + "}(" + x.label + ")", std::move(r));
        }
      } catch (const Error& err) {
        if (err.code() != Errc::NonConcentratedHom && err.code() != Errc::WindowViolation) throw;
        rec.k_only = true;
        cur.provenance.push_back({"k-only fallback", err.what()});
      }
    } else {
      rec.k_only = true;
      nontrivial = rec.chi != 0;
    }
    if (rec.k_only && nontrivial) {
      result = CollectionObject::k_only("R_{" + e.label + "}(" + x.label + ")",
                                        x.kclass - rec.chi * e.kclass);
    }
    rec.nontrivial = nontrivial;
    rec.result = result.label;
    bool kclass_ok = result.kclass == x.kclass - rec.chi * e.kclass;

    std::vector<CollectionObject> objs = cur.objects();
    objs[pos - 1] = e;
    objs[pos] = result;
    ExcCollection next(s, std::move(objs));
    next.provenance = cur.provenance;
    next.mutations = cur.mutations;

    const std::size_t n = next.size();
    IntMatrix u(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) u[i][i] = 1;
    u[pos - 1][pos - 1] = 0;
    u[pos][pos - 1] = 1;
    u[pos - 1][pos] = 1;
    u[pos][pos] = -rec.chi;
    rec.base_change_verified = kclass_ok && next.gram() == congruence(u, g_old) &&
                               next.gram_from_kclasses() == next.gram();
    next.provenance.push_back(
        {nontrivial ? "mutation" : "transposition",
         "(" + x.label + ", " + e.label + ") -> (" + e.label + ", " + result.label + ")"});
    next.mutations.push_back(rec);
    cur = std::move(next);
  }
  return cur;
}

ExcCollection cascade_mutation(const ExcCollection& beilinson) {
  const auto& s = beilinson.setting();
  const std::size_t r1 = s.num_irreps();
  const std::size_t n1 = static_cast<std::size_t>(s.n() + 1);
  if (beilinson.size() != r1 * n1) {
    throw Error(Errc::InvalidParameter, "cascade expects the full Beilinson collection");
  }
  ExcCollection cur = beilinson;
  for (std::size_t i = 1; i < n1; ++i) {
    const std::string want = EqLineBundle{static_cast<long>(i), 0}.label();
    if (cur.object(i * r1).label != want) {
      throw Error(Errc::InvalidParameter, "expected " + want + " at position " +
                                              std::to_string(i * r1));
    }
    cur = move_left(cur, i * r1, i);
  }
  cur.provenance.push_back({"cascade", "objects O(i)@rho_0 moved to the front"});
  return cur;
}

long line_bundle_weight(const EquivariantSetting& s, const CentralSubgroupInfo& t,
                        const EqLineBundle& l) {
  if (t.e == 1) return 0;
  long c = s.central_exponent(l.irrep, t.generator_element, t.e);
  long w = (c - l.twist) % t.e;
  return w < 0 ? w + t.e : w;
}

long gorenstein_parameter(const EquivariantSetting& s, long d) {
  const long n1 = s.n() + 1;
  if (d < 1 || n1 % d != 0) {
    throw Error(Errc::NotADivisor,
                "d = " + std::to_string(d) + " does not divide n+1 = " + std::to_string(n1));
  }
  return n1 / d;
}

VeroneseBlocks veronese_blocks(const ExcCollection& coll, long d) {
  const auto& s = coll.setting();
  gorenstein_parameter(s, d);
  CentralSubgroupInfo t = central_scalar_subgroup(s.group(), d);
  VeroneseBlocks vb;
  vb.d = d;
  vb.e = t.e;
  vb.blocks.assign(static_cast<std::size_t>(t.e), {});
  for (std::size_t i = 0; i < coll.size(); ++i) {
    const auto& obj = coll.object(i);
    std::set<long> ws;
    if (obj.complex) {
      for (const auto& [p, terms] : obj.complex->terms()) {
        for (const auto& l : terms) ws.insert(line_bundle_weight(s, t, l));
      }
    } else {
      for (std::size_t a = 0; a < obj.kclass.twists(); ++a) {
        for (std::size_t b = 0; b < obj.kclass.irreps(); ++b) {
          if (obj.kclass.at(a, b) != 0) {
            ws.insert(line_bundle_weight(s, t, EqLineBundle{static_cast<long>(a), b}));
          }
        }
      }
    }
    if (ws.size() != 1) {
      throw Error(Errc::OrthogonalityFailure, obj.label + " mixes T_d weights");
    }
    long w = *ws.begin();
    vb.weights.push_back(w);
    vb.blocks[static_cast<std::size_t>(w)].push_back(i);
  }
  for (std::size_t i = 0; i < coll.size(); ++i) {
    for (std::size_t j = 0; j < coll.size(); ++j) {
      if (vb.weights[i] == vb.weights[j]) continue;
      bool zero = coll.euler(i, j) == 0;
      if (zero && coll.object(i).complex && coll.object(j).complex) zero = coll.ext(i, j).empty();
      if (!zero) {
        throw Error(Errc::OrthogonalityFailure, "blocks are not orthogonal: " +
                                                    coll.object(i).label + " and " +
                                                    coll.object(j).label);
      }
    }
  }
  vb.pullback_block = 0;
  return vb;
}

ExcCollection normalize_shifts(const ExcCollection& coll) {
  if (!coll.has_complexes() || check_strong(coll).pass) return coll;
  const std::size_t n = coll.size();
  std::vector<std::vector<std::pair<std::size_t, long>>> adj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto& e = coll.ext(i, j);
      if (e.empty()) continue;
      if (e.size() > 1) {
        ExcCollection out = coll;
        out.provenance.push_back({"shift normalisation skipped",
                                  "morphisms from " + coll.object(i).label + " to " +
                                      coll.object(j).label + " in several degrees"});
        return out;
      }
      long k = e.begin()->first;
      adj[i].push_back({j, k});
      adj[j].push_back({i, -k});
    }
  }
  std::vector<std::optional<long>> shift(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (shift[root]) continue;
    shift[root] = 0;
    std::deque<std::size_t> queue{root};
    while (!queue.empty()) {
      std::size_t v = queue.front();
      queue.pop_front();
      for (const auto& [w, k] : adj[v]) {
        long want = *shift[v] + k;
        if (!shift[w]) {
          shift[w] = want;
          queue.push_back(w);
        } else if (*shift[w] != want) {
          ExcCollection out = coll;
          out.provenance.push_back(
              {"shift normalisation skipped", "inconsistent degrees around " + coll.object(w).label});
          return out;
        }
      }
    }
  }
  std::vector<CollectionObject> objs;
  std::string detail;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& obj = coll.object(i);
    long sh = *shift[i];
    if (sh == 0) {
      objs.push_back(obj);
      continue;
    }
    std::string label = obj.label + "[" + std::to_string(sh) + "]";
    detail += (detail.empty() ? "" : ", ") + label;
    objs.push_back(CollectionObject::make(label, obj.complex->shift(sh)));
  }
  ExcCollection out(coll.setting(), std::move(objs));
  out.provenance = coll.provenance;
  out.mutations = coll.mutations;
  out.provenance.push_back({"shift normalisation", detail});
  return out;
}

ExcCollection dsing_collection(const EquivariantSetting& s, DsingMode mode, long d) {
  const long a = gorenstein_parameter(s, d);
  ExcCollection beil = beilinson_collection(s);
  if (mode == DsingMode::CrossedProduct) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < beil.size(); ++i) {
      if (i >= static_cast<std::size_t>(a) * s.num_irreps()) keep.push_back(i);
    }
    return beil.subcollection(keep, "removal (crossed product, a = " + std::to_string(a) + ")");
  }
  if (!s.in_special_linear()) {
    throw Error(Errc::ValidationError, "invariant Veronese mode needs G inside SL");
  }
  VeroneseBlocks vb = veronese_blocks(beil, d);
  ExcCollection cur = beil.subcollection(vb.blocks[vb.pullback_block], "pullback block");
  for (long i = 0; i < a; ++i) {
    const std::string want = EqLineBundle{d * i, 0}.label();
    auto labels = cur.labels();
    auto it = std::find(labels.begin(), labels.end(), want);
    if (it == labels.end()) throw Error(Errc::InvalidParameter, want + " missing from the pullback block");
    auto from = static_cast<std::size_t>(it - labels.begin());
    cur = move_left(cur, from, static_cast<std::size_t>(i));
  }
  std::vector<std::size_t> keep;
  for (std::size_t i = static_cast<std::size_t>(a); i < cur.size(); ++i) keep.push_back(i);
  cur = cur.subcollection(keep, "removal (invariant Veronese, a = " + std::to_string(a) + ")");
  return normalize_shifts(cur);
}

Quiver quiver(const ExcCollection& coll) {
  CheckReport strong = check_strong(coll);
  if (!strong.pass) throw Error(Errc::NotStrong, strong.message);
  const std::size_t n = coll.size();
  Quiver q;
  q.nodes = coll.labels();
  q.arrows.assign(n, std::vector<long long>(n, 0));
  std::map<std::pair<std::size_t, std::size_t>, std::vector<ChainMap>> bases;
  auto basis = [&](std::size_t i, std::size_t j) -> const std::vector<ChainMap>& {
    auto it = bases.find({i, j});
    if (it != bases.end()) return it->second;
    return bases
        .emplace(std::make_pair(i, j),
                 cohomology_basis(*coll.object(i).complex, *coll.object(j).complex, 0))
        .first->second;
  };
  IntMatrix hom = coll.hom_dims();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (hom[i][j] == 0) continue;
      HomComplex h = hom_complex(*coll.object(i).complex, *coll.object(j).complex);
      std::vector<Vec> span;
      auto prev = h.d.find(-1);
      if (prev != h.d.end()) {
        for (std::size_t c = 0; c < prev->second.cols(); ++c) span.push_back(prev->second.col(c));
      }
      const std::size_t width = h.dim(0);
      const std::size_t boundary_rank = span.empty() ? 0 : rank_of(span, width);
      for (std::size_t k = i + 1; k < j; ++k) {
        if (hom[i][k] == 0 || hom[k][j] == 0) continue;
        for (const auto& f : basis(i, k)) {
          for (const auto& g : basis(k, j)) span.push_back(flatten(h, compose(f, g)));
        }
      }
      const std::size_t total = span.empty() ? 0 : rank_of(span, width);
      q.arrows[i][j] = hom[i][j] - static_cast<long long>(total - boundary_rank);
    }
  }
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (q.arrows[i][j] > 0) parent[root(i)] = root(j);
    }
  }
  std::map<std::size_t, std::size_t> comp_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = root(i);
    auto it = comp_of_root.find(r);
    if (it == comp_of_root.end()) {
      comp_of_root.emplace(r, q.components.size());
      q.components.push_back({i});
    } else {
      q.components[it->second].push_back(i);
    }
  }
  return q;
}

ExcCollection tensor_twist(const ExcCollection& coll, long k,
                           const std::optional<std::vector<std::size_t>>& only) {
  const auto& s = coll.setting();
  std::set<std::size_t> chosen;
  if (only) {
    chosen.insert(only->begin(), only->end());
  } else {
    for (std::size_t i = 0; i < coll.size(); ++i) chosen.insert(i);
  }
  std::vector<CollectionObject> objs;
  for (std::size_t i = 0; i < coll.size(); ++i) {
    if (!chosen.count(i)) continue;
    const auto& obj = coll.object(i);
    if (k == 0) {
      objs.push_back(obj);
      continue;
    }
    if (obj.complex) {
      EqComplex c = obj.complex->twist(k);
      std::string label = c.is_line_bundle() ? c.term(0).front().label()
                                             : obj.label + "(x)O(" + std::to_string(k) + ")";
      objs.push_back(CollectionObject::make(label, std::move(c)));
    } else {
      objs.push_back(CollectionObject::k_only(obj.label + "(x)O(" + std::to_string(k) + ")",
                                              twist_kclass(s, obj.kclass, k)));
    }
  }
  ExcCollection out(s, std::move(objs));
  out.provenance = coll.provenance;
  out.mutations = coll.mutations;
  out.provenance.push_back({"twist", "tensor by O(" + std::to_string(k) + ")"});
  return out;
}

}  // namespace excoll
