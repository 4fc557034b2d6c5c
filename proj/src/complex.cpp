#include "excoll/complex.hpp"

#include <algorithm>
#include <sstream>

#include "excoll/error.hpp"

namespace excoll {

namespace {

const HomSpaceBasis& space(const EquivariantSetting& s, const EqLineBundle& from,
                           const EqLineBundle& to) {
  return s.hom_basis(to.twist - from.twist, from.irrep, to.irrep);
}

const Summands& empty_summands() {
  static const Summands empty;
  return empty;
}

bool sign_positive(long k) { return k % 2 == 0; }

}  // namespace

Block zero_block(const EquivariantSetting& s, const Summands& source, const Summands& target) {
  Block b(target.size(), std::vector<Vec>(source.size()));
  for (std::size_t t = 0; t < target.size(); ++t) {
    for (std::size_t c = 0; c < source.size(); ++c) {
      b[t][c] = Vec(space(s, source[c], target[t]).size());
    }
  }
  return b;
}

Block compose_blocks(const EquivariantSetting& s, const Summands& source, const Summands& middle,
                     const Summands& target, const Block& f, const Block& g) {
  Block out = zero_block(s, source, target);
  for (std::size_t t = 0; t < target.size(); ++t) {
    for (std::size_t m = 0; m < middle.size(); ++m) {
      const Vec& gv = g[t][m];
      if (is_zero(gv)) continue;
      const auto& gs = space(s, middle[m], target[t]);
      for (std::size_t c = 0; c < source.size(); ++c) {
        const Vec& fv = f[m][c];
        if (is_zero(fv)) continue;
        const auto& fs = space(s, source[c], middle[m]);
        Vec prod = compose_hom(s, fs, fv, gs, gv);
        for (std::size_t i = 0; i < prod.size(); ++i) out[t][c][i] += prod[i];
      }
    }
  }
  return out;
}

Block add_blocks(const Block& a, const Block& b) {
  Block out = a;
  for (std::size_t t = 0; t < out.size(); ++t) {
    for (std::size_t c = 0; c < out[t].size(); ++c) {
      for (std::size_t i = 0; i < out[t][c].size(); ++i) out[t][c][i] += b[t][c][i];
    }
  }
  return out;
}

Block scale_block(const Block& a, const CycNum& factor) {
  Block out = a;
  for (auto& row : out) {
    for (auto& v : row) {
      for (auto& x : v) {
        if (!x.is_zero()) x *= factor;
      }
    }
  }
  return out;
}

bool is_zero_block(const Block& a) {
  for (const auto& row : a) {
    for (const auto& v : row) {
      if (!is_zero(v)) return false;
    }
  }
  return true;
}

EqComplex::EqComplex(EquivariantSetting setting, std::map<long, Summands> terms,
                     std::map<long, Block> differentials)
    : setting_(std::move(setting)) {
  for (auto& [p, t] : terms) {
    if (!t.empty()) terms_.emplace(p, std::move(t));
  }
  for (auto& [p, b] : differentials) {
    if (!terms_.count(p) || !terms_.count(p + 1)) {
      if (!is_zero_block(b)) {
        throw Error(Errc::InvalidComplex,
                    "differential out of degree " + std::to_string(p) + " has no term to act on");
      }
      continue;
    }
    diffs_.emplace(p, std::move(b));
  }
  validate();
}

void EqComplex::validate() const {
  const auto& s = setting();
  for (const auto& [p, terms] : terms_) {
    for (const auto& l : terms) {
      if (l.irrep >= s.num_irreps()) {
        throw Error(Errc::InvalidComplex, "irrep index out of range: " + l.label());
      }
    }
  }
  for (const auto& [p, b] : diffs_) {
    const auto& src = term(p);
    const auto& tgt = term(p + 1);
    if (b.size() != tgt.size()) throw Error(Errc::InvalidComplex, "differential has wrong row count");
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      if (b[t].size() != src.size()) {
        throw Error(Errc::InvalidComplex, "differential has wrong column count");
      }
      for (std::size_t c = 0; c < src.size(); ++c) {
        if (b[t][c].size() != space(s, src[c], tgt[t]).size()) {
          throw Error(Errc::InvalidComplex, "coordinate vector from " + src[c].label() + " to " +
                                                tgt[t].label() + " has wrong length");
        }
      }
    }
  }
  if (!terms_.empty() && max_twist() - min_twist() > s.n()) {
    throw Error(Errc::WindowViolation, "twists span more than n = " + std::to_string(s.n()));
  }
  for (const auto& [p, b] : diffs_) {
    auto next = diffs_.find(p + 1);
    if (next == diffs_.end()) continue;
    Block dd = compose_blocks(s, term(p), term(p + 1), term(p + 2), b, next->second);
    if (!is_zero_block(dd)) {
      throw Error(Errc::InvalidComplex, "d o d != 0 at degree " + std::to_string(p));
    }
  }
}

EqComplex EqComplex::from_line_bundle(const EquivariantSetting& s, const EqLineBundle& l) {
  return EqComplex(s, {{0, {l}}}, {});
}

EqComplex EqComplex::direct_sum(const std::vector<EqComplex>& parts) {
  if (parts.empty()) throw Error(Errc::InvalidComplex, "direct sum of no complexes");
  const auto& s = parts.front().setting();
  std::map<long, Summands> terms;
  for (const auto& part : parts) {
    for (const auto& [p, t] : part.terms()) {
      auto& dst = terms[p];
      dst.insert(dst.end(), t.begin(), t.end());
    }
  }
  std::map<long, Block> diffs;
  for (const auto& [p, t] : terms) {
    if (!terms.count(p + 1)) continue;
    Block b = zero_block(s, t, terms.at(p + 1));
    std::size_t row0 = 0, col0 = 0;
    for (const auto& part : parts) {
      Block d = part.differential(p);
      for (std::size_t r = 0; r < d.size(); ++r) {
        for (std::size_t c = 0; c < d[r].size(); ++c) b[row0 + r][col0 + c] = d[r][c];
      }
      row0 += part.term(p + 1).size();
      col0 += part.term(p).size();
    }
    diffs.emplace(p, std::move(b));
  }
  return EqComplex(s, std::move(terms), std::move(diffs));
}

const Summands& EqComplex::term(long p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? empty_summands() : it->second;
}

Block EqComplex::differential(long p) const {
  auto it = diffs_.find(p);
  if (it != diffs_.end()) return it->second;
  return zero_block(setting(), term(p), term(p + 1));
}

long EqComplex::min_twist() const {
  long m = term(min_degree()).front().twist;
  for (const auto& [p, t] : terms_) {
    for (const auto& l : t) m = std::min(m, l.twist);
  }
  return m;
}

long EqComplex::max_twist() const {
  long m = term(min_degree()).front().twist;
  for (const auto& [p, t] : terms_) {
    for (const auto& l : t) m = std::max(m, l.twist);
  }
  return m;
}

std::size_t EqComplex::summand_count() const {
  std::size_t n = 0;
  for (const auto& [p, t] : terms_) n += t.size();
  return n;
}

bool EqComplex::is_line_bundle() const {
  return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.size() == 1;
}

EqComplex EqComplex::shift(long k) const {
  std::map<long, Summands> terms;
  for (const auto& [p, t] : terms_) terms.emplace(p - k, t);
  std::map<long, Block> diffs;
  for (const auto& [p, b] : diffs_) {
    diffs.emplace(p - k, sign_positive(k) ? b : scale_block(b, CycNum(-1)));
  }
  return EqComplex(setting(), std::move(terms), std::move(diffs));
}

EqComplex EqComplex::twist(long k) const {
  std::map<long, Summands> terms = terms_;
  for (auto& [p, t] : terms) {
    for (auto& l : t) l.twist += k;
  }
  return EqComplex(setting(), std::move(terms), diffs_);
}

KClass EqComplex::kclass() const {
  KClass out = KClass::zero(setting());
  for (const auto& [p, t] : terms_) {
    for (const auto& l : t) {
      KClass c = koszul_reduce(setting(), l.twist, l.irrep);
      if (sign_positive(p)) {
        out += c;
      } else {
        out -= c;
      }
    }
  }
  return out;
}

std::string EqComplex::describe() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [p, t] : terms_) {
    if (!first) os << "; ";
    first = false;
    os << p << ": ";
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? " + " : "") << t[i].label();
  }
  return os.str();
}

std::size_t HomComplex::dim(long k) const {
  auto it = dims.find(k);
  return it == dims.end() ? 0 : it->second;
}

const HomComplex::Slot* HomComplex::find(long k, long p, std::size_t target,
                                         std::size_t source) const {
  auto it = layout.find(k);
  if (it == layout.end()) return nullptr;
  for (const auto& slot : it->second) {
    if (slot.p == p && slot.target == target && slot.source == source) return &slot;
  }
  return nullptr;
}

HomComplex hom_complex(const EqComplex& c, const EqComplex& d) {
  HomComplex h;
  if (c.is_zero() || d.is_zero()) return h;
  const auto& s = c.setting();
  const long n = s.n();
  for (const auto& [p, src] : c.terms()) {
    for (const auto& a : src) {
      for (const auto& [q, tgt] : d.terms()) {
        for (const auto& b : tgt) {
          if (b.twist - a.twist < -n) {
            throw Error(Errc::WindowViolation, "Hom(" + a.label() + ", " + b.label() +
                                                   ") leaves the window; Hom complex would not "
                                                   "compute Ext");
          }
        }
      }
    }
  }
  h.min_degree = d.min_degree() - c.max_degree();
  h.max_degree = d.max_degree() - c.min_degree();
  for (long k = h.min_degree; k <= h.max_degree + 1; ++k) {
    std::vector<HomComplex::Slot> slots;
    std::size_t offset = 0;
    for (const auto& [p, src] : c.terms()) {
      const auto& tgt = d.term(p + k);
      for (std::size_t t = 0; t < tgt.size(); ++t) {
        for (std::size_t j = 0; j < src.size(); ++j) {
          std::size_t size = space(s, src[j], tgt[t]).size();
          slots.push_back({p, t, j, offset, size});
          offset += size;
        }
      }
    }
    h.layout.emplace(k, std::move(slots));
    h.dims.emplace(k, offset);
  }
  for (long k = h.min_degree - 1; k <= h.max_degree; ++k) {
    std::size_t rows = h.dim(k + 1), cols = h.dim(k);
    CycMatrix m(rows, cols);
    if (rows == 0 || cols == 0) {
      h.d.emplace(k, std::move(m));
      continue;
    }
    const CycNum pre_sign = sign_positive(k) ? CycNum(-1) : CycNum(1);
    for (const auto& slot : h.layout.at(k)) {
      const auto& src = c.term(slot.p);
      const auto& tgt = d.term(slot.p + k);
      const auto& fs = space(s, src[slot.source], tgt[slot.target]);
      // post-composition with d_D out of degree p + k
      const auto& tgt_next = d.term(slot.p + k + 1);
      Block dd = tgt_next.empty() ? Block{} : d.differential(slot.p + k);
      // pre-composition with d_C into degree p
      const auto& src_prev = c.term(slot.p - 1);
      Block dc = src_prev.empty() ? Block{} : c.differential(slot.p - 1);
      for (std::size_t i = 0; i < slot.size; ++i) {
        Vec f(slot.size);
        f[i] = CycNum(1);
        const std::size_t col = slot.offset + i;
        for (std::size_t t2 = 0; t2 < tgt_next.size(); ++t2) {
          const Vec& g = dd[t2][slot.target];
          if (is_zero(g)) continue;
          const auto& gs = space(s, tgt[slot.target], tgt_next[t2]);
          Vec comp = compose_hom(s, fs, f, gs, g);
          const auto* out = h.find(k + 1, slot.p, t2, slot.source);
          for (std::size_t r = 0; r < comp.size(); ++r) m(out->offset + r, col) += comp[r];
        }
        for (std::size_t s2 = 0; s2 < src_prev.size(); ++s2) {
          const Vec& g = dc[slot.source][s2];
          if (is_zero(g)) continue;
          const auto& gs = space(s, src_prev[s2], src[slot.source]);
          Vec comp = compose_hom(s, gs, g, fs, f);
          const auto* out = h.find(k + 1, slot.p - 1, slot.target, s2);
          for (std::size_t r = 0; r < comp.size(); ++r) {
            if (!comp[r].is_zero()) m(out->offset + r, col) += pre_sign * comp[r];
          }
        }
      }
    }
    h.d.emplace(k, std::move(m));
  }
  return h;
}

std::map<long, long> ext_dims(const EqComplex& c, const EqComplex& d) {
  HomComplex h = hom_complex(c, d);
  std::map<long, long> out;
  if (h.max_degree < h.min_degree) return out;
  std::map<long, std::size_t> ranks;
  for (const auto& [k, m] : h.d) ranks[k] = (m.rows() == 0 || m.cols() == 0) ? 0 : rank_of(m);
  for (long k = h.min_degree; k <= h.max_degree; ++k) {
    long dim = static_cast<long>(h.dim(k)) - static_cast<long>(ranks[k]) -
               static_cast<long>(ranks[k - 1]);
    if (dim != 0) out.emplace(k, dim);
  }
  return out;
}

long euler_from_ext(const std::map<long, long>& dims) {
  long total = 0;
  for (const auto& [k, v] : dims) total += sign_positive(k) ? v : -v;
  return total;
}

Block ChainMap::component(long p) const {
  auto it = components.find(p);
  if (it != components.end()) return it->second;
  return zero_block(source.setting(), source.term(p), target.term(p + degree));
}

Vec flatten(const HomComplex& h, const ChainMap& f) {
  Vec out(h.dim(f.degree));
  auto it = h.layout.find(f.degree);
  if (it == h.layout.end()) return out;
  for (const auto& slot : it->second) {
    auto comp = f.components.find(slot.p);
    if (comp == f.components.end()) continue;
    const Vec& v = comp->second[slot.target][slot.source];
    for (std::size_t i = 0; i < slot.size; ++i) out[slot.offset + i] = v[i];
  }
  return out;
}

ChainMap unflatten(const EqComplex& c, const EqComplex& d, const HomComplex& h, long k,
                   const Vec& v) {
  ChainMap f{c, d, k, {}};
  for (const auto& [p, src] : c.terms()) {
    const auto& tgt = d.term(p + k);
    if (tgt.empty()) continue;
    f.components.emplace(p, zero_block(c.setting(), src, tgt));
  }
  auto it = h.layout.find(k);
  if (it == h.layout.end()) return f;
  for (const auto& slot : it->second) {
    Vec& dst = f.components.at(slot.p)[slot.target][slot.source];
    for (std::size_t i = 0; i < slot.size; ++i) dst[i] = v[slot.offset + i];
  }
  return f;
}

bool is_chain_map(const ChainMap& f) {
  const auto& s = f.source.setting();
  const long k = f.degree;
  if (f.source.is_zero() || f.target.is_zero()) return true;
  for (long p = f.source.min_degree() - 1; p <= f.source.max_degree(); ++p) {
    const auto& src = f.source.term(p);
    const auto& tgt_next = f.target.term(p + k + 1);
    if (src.empty() || tgt_next.empty()) continue;
    Block post = compose_blocks(s, src, f.target.term(p + k), tgt_next, f.component(p),
                                f.target.differential(p + k));
    Block pre = compose_blocks(s, src, f.source.term(p + 1), tgt_next,
                               f.source.differential(p), f.component(p + 1));
    Block total = sign_positive(k) ? add_blocks(post, scale_block(pre, CycNum(-1)))
                                   : add_blocks(post, pre);
    if (!is_zero_block(total)) return false;
  }
  return true;
}

ChainMap compose(const ChainMap& f, const ChainMap& g) {
  if (!(f.target == g.source)) throw Error(Errc::BasisMismatch, "chain maps are not composable");
  ChainMap out{f.source, g.target, f.degree + g.degree, {}};
  const auto& s = f.source.setting();
  for (const auto& [p, src] : f.source.terms()) {
    const auto& mid = f.target.term(p + f.degree);
    const auto& tgt = g.target.term(p + out.degree);
    if (tgt.empty()) continue;
    if (mid.empty()) {
      out.components.emplace(p, zero_block(s, src, tgt));
      continue;
    }
    out.components.emplace(
        p, compose_blocks(s, src, mid, tgt, f.component(p), g.component(p + f.degree)));
  }
  return out;
}

ChainMap identity_map(const EqComplex& c) {
  ChainMap id{c, c, 0, {}};
  const auto& s = c.setting();
  for (const auto& [p, t] : c.terms()) {
    Block b = zero_block(s, t, t);
    // the echelon basis of End(rho) is the identity itself
    for (std::size_t i = 0; i < t.size(); ++i) b[i][i][0] = CycNum(1);
    id.components.emplace(p, std::move(b));
  }
  return id;
}

std::vector<ChainMap> cohomology_basis(const EqComplex& c, const EqComplex& d, long k) {
  HomComplex h = hom_complex(c, d);
  std::vector<ChainMap> out;
  const std::size_t n = h.dim(k);
  if (n == 0) return out;
  std::vector<Vec> cycles;
  const CycMatrix& dk = h.d.at(k);
  if (dk.rows() == 0) {
    for (std::size_t i = 0; i < n; ++i) {
      Vec e(n);
      e[i] = CycNum(1);
      cycles.push_back(std::move(e));
    }
  } else {
    cycles = nullspace(dk);
  }
  std::vector<Vec> span;
  auto prev = h.d.find(k - 1);
  if (prev != h.d.end() && prev->second.cols() > 0) {
    for (std::size_t j = 0; j < prev->second.cols(); ++j) span.push_back(prev->second.col(j));
  }
  std::size_t rank = rank_of(span, n);
  for (auto& z : cycles) {
    span.push_back(z);
    std::size_t r = rank_of(span, n);
    if (r == rank) {
      span.pop_back();
      continue;
    }
    rank = r;
    out.push_back(unflatten(c, d, h, k, z));
  }
  return out;
}

std::optional<long> concentrated_degree(const EqComplex& e, const EqComplex& f) {
  auto dims = ext_dims(e, f);
  if (dims.empty()) return std::nullopt;
  if (dims.size() > 1) {
    std::string detail;
    for (const auto& [k, v] : dims) detail += " Ext^" + std::to_string(k) + "=" + std::to_string(v);
    throw Error(Errc::NonConcentratedHom, "Hom is spread over several degrees:" + detail);
  }
  return dims.begin()->first;
}

EqComplex right_mutation(const EqComplex& e, const EqComplex& f) {
  auto k0 = concentrated_degree(e, f);
  if (!k0) return e;
  EqComplex fk = f.shift(*k0);
  auto basis = cohomology_basis(e, fk, 0);
  const auto& s = e.setting();
  std::vector<EqComplex> copies(basis.size(), fk);
  EqComplex t = EqComplex::direct_sum(copies);

  // R^p = E^p + T^{p-1}
  std::map<long, Summands> terms;
  std::map<long, std::size_t> e_count;
  for (long p = std::min(e.min_degree(), t.min_degree() + 1);
       p <= std::max(e.max_degree(), t.max_degree() + 1); ++p) {
    Summands row = e.term(p);
    e_count[p] = row.size();
    const auto& tail = t.term(p - 1);
    row.insert(row.end(), tail.begin(), tail.end());
    if (!row.empty()) terms.emplace(p, std::move(row));
  }
  std::map<long, Block> diffs;
  for (const auto& [p, src] : terms) {
    auto next = terms.find(p + 1);
    if (next == terms.end()) continue;
    Block b = zero_block(s, src, next->second);
    const std::size_t e_src = e_count[p], e_tgt = e_count[p + 1];
    Block de = e.differential(p);
    for (std::size_t r = 0; r < e_tgt; ++r) {
      for (std::size_t c = 0; c < e_src; ++c) b[r][c] = de[r][c];
    }
    // evaluation E^p -> T^p, copy i carries basis map i
    std::size_t row0 = e_tgt;
    const std::size_t per_copy = fk.term(p).size();
    for (const auto& phi : basis) {
      Block comp = phi.component(p);
      for (std::size_t r = 0; r < per_copy; ++r) {
        for (std::size_t c = 0; c < e_src; ++c) b[row0 + r][c] = comp[r][c];
      }
      row0 += per_copy;
    }
    Block dt = scale_block(t.differential(p - 1), CycNum(-1));
    for (std::size_t r = 0; r < dt.size(); ++r) {
      for (std::size_t c = 0; c < dt[r].size(); ++c) b[e_tgt + r][e_src + c] = dt[r][c];
    }
    diffs.emplace(p, std::move(b));
  }
  return EqComplex(s, std::move(terms), std::move(diffs));
}

EqComplex left_mutation(const EqComplex& e, const EqComplex& f) {
  auto k0 = concentrated_degree(e, f);
  if (!k0) return f;
  EqComplex ek = e.shift(-*k0);
  auto basis = cohomology_basis(ek, f, 0);
  const auto& s = f.setting();
  std::vector<EqComplex> copies(basis.size(), ek);
  EqComplex sc = EqComplex::direct_sum(copies);

  // L^p = S^{p+1} + F^p
  std::map<long, Summands> terms;
  std::map<long, std::size_t> s_count;
  for (long p = std::min(sc.min_degree() - 1, f.min_degree());
       p <= std::max(sc.max_degree() - 1, f.max_degree()); ++p) {
    Summands row = sc.term(p + 1);
    s_count[p] = row.size();
    const auto& tail = f.term(p);
    row.insert(row.end(), tail.begin(), tail.end());
    if (!row.empty()) terms.emplace(p, std::move(row));
  }
  std::map<long, Block> diffs;
  for (const auto& [p, src] : terms) {
    auto next = terms.find(p + 1);
    if (next == terms.end()) continue;
    Block b = zero_block(s, src, next->second);
    const std::size_t s_src = s_count[p], s_tgt = s_count[p + 1];
    Block ds = scale_block(sc.differential(p + 1), CycNum(-1));
    for (std::size_t r = 0; r < ds.size(); ++r) {
      for (std::size_t c = 0; c < ds[r].size(); ++c) b[r][c] = ds[r][c];
    }
    // coevaluation S^{p+1} -> F^{p+1}
    std::size_t col0 = 0;
    const std::size_t per_copy = ek.term(p + 1).size();
    for (const auto& phi : basis) {
      Block comp = phi.component(p + 1);
      for (std::size_t r = 0; r < comp.size(); ++r) {
        for (std::size_t c = 0; c < per_copy; ++c) b[s_tgt + r][col0 + c] = comp[r][c];
      }
      col0 += per_copy;
    }
    Block df = f.differential(p);
    for (std::size_t r = 0; r < df.size(); ++r) {
      for (std::size_t c = 0; c < df[r].size(); ++c) b[s_tgt + r][s_src + c] = df[r][c];
    }
    diffs.emplace(p, std::move(b));
  }
  return EqComplex(s, std::move(terms), std::move(diffs));
}

}  // namespace excoll
