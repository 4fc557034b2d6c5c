#include "excoll/equivariant.hpp"

#include <functional>

#include "excoll/error.hpp"

namespace excoll {

MonomialBasis::MonomialBasis(std::size_t vars, long degree) : vars_(vars), degree_(degree) {
  if (degree < 0) return;
  std::vector<int> cur(vars, 0);
  // Lexicographic descending: exhaust x_1 first.
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == vars) {
      cur[pos] = left;
      index_.emplace(cur, exps_.size());
      exps_.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (vars == 0) {
    if (degree == 0) {
      index_.emplace(cur, 0);
      exps_.push_back(cur);
    }
    return;
  }
  rec(0, static_cast<int>(degree));
}

const MonomialBasis& monomial_basis(std::size_t vars, long degree) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, long>, std::unique_ptr<MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{vars, degree}];
  if (!slot) slot = std::make_unique<MonomialBasis>(vars, degree);
  return *slot;
}

namespace {

// Product of homogeneous polynomials given as dense coefficient vectors.
Vec poly_mul(std::size_t vars, long p, const Vec& a, long q, const Vec& b) {
  const auto& ma = monomial_basis(vars, p);
  const auto& mb = monomial_basis(vars, q);
  const auto& mc = monomial_basis(vars, p + q);
  Vec out(mc.size());
  std::vector<int> e(vars);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      if (b[j].is_zero()) continue;
      for (std::size_t v = 0; v < vars; ++v) e[v] = ma.exponents(i)[v] + mb.exponents(j)[v];
      out[mc.index(e)] += a[i] * b[j];
    }
  }
  return out;
}

}  // namespace

EquivariantSetting::EquivariantSetting(FiniteMatrixGroup group, std::vector<Irrep> irreps)
    : data_(std::make_shared<Data>()) {
  IrrepReport report = verify_irreps(group, irreps);
  if (!report.pass) throw Error(Errc::IrrepVerificationFailed, report.message);
  data_->group = std::move(group);
  data_->irreps = std::move(irreps);
  for (const auto& rho : data_->irreps) {
    data_->irrep_chars.push_back(character_of(data_->group, rho.matrices));
  }
  data_->chi_v = defining_character(data_->group);
  data_->chi_vdual = data_->chi_v.conjugate();
}

EquivariantSetting EquivariantSetting::from_builtin(const BuiltinKind& kind) {
  auto built = builtin_group(kind);
  return EquivariantSetting(std::move(built.group), std::move(built.irreps));
}

namespace {

template <class Map, class Key, class Build>
const typename Map::mapped_type& cached(std::mutex& mu, Map& map, const Key& key, Build build) {
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
  }
  auto value = build();
  std::lock_guard<std::mutex> lock(mu);
  return map.emplace(key, std::move(value)).first->second;
}

}  // namespace

CharacterVec EquivariantSetting::sym_vdual(long m) const {
  return cached(data_->mu, data_->sym_vdual_cache, m,
                [&] { return sym_power_character(group(), vdual_character(), m); });
}

CharacterVec EquivariantSetting::sym_v(long m) const {
  return cached(data_->mu, data_->sym_v_cache, m,
                [&] { return sym_power_character(group(), v_character(), m); });
}

CharacterVec EquivariantSetting::ext_vdual(long k) const {
  return cached(data_->mu, data_->ext_vdual_cache, k,
                [&] { return ext_power_character(group(), vdual_character(), k); });
}

CharacterVec EquivariantSetting::ext_v(long k) const {
  return cached(data_->mu, data_->ext_v_cache, k,
                [&] { return ext_power_character(group(), v_character(), k); });
}

bool EquivariantSetting::in_special_linear() const {
  return det_vdual() == trivial_character(group());
}

std::vector<long> EquivariantSetting::decompose(const CharacterVec& chi) const {
  std::vector<long> out;
  for (std::size_t j = 0; j < num_irreps(); ++j) {
    out.push_back(
        to_integer(character_inner_product(group(), chi, irrep_character(j)), "multiplicity"));
  }
  return out;
}

std::size_t EquivariantSetting::tensor_with_linear(std::size_t j, const CharacterVec& lambda) const {
  CharacterVec prod = irrep_character(j) * lambda;
  for (std::size_t i = 0; i < num_irreps(); ++i) {
    if (irrep_character(i) == prod) return i;
  }
  throw Error(Errc::InvalidParameter, "character is not one-dimensional");
}

long EquivariantSetting::central_exponent(std::size_t j, std::size_t scalar_element, long e) const {
  auto zeta = group().element(scalar_element).scalar_value();
  auto lambda = irreps()[j].matrices[scalar_element].scalar_value();
  if (!zeta || !lambda) throw Error(Errc::InvalidParameter, "element is not central scalar");
  CycNum p(1);
  for (long c = 0; c < e; ++c) {
    if (p == *lambda) return c;
    p *= *zeta;
  }
  throw Error(Errc::InvalidParameter, "central character is not a power of the generator");
}

const std::vector<CycMatrix>& EquivariantSetting::sym_action(long m) const {
  return *cached(data_->mu, data_->sym_action_cache, m, [&] {
    return std::make_unique<std::vector<CycMatrix>>(build_sym_action(m));
  });
}

std::vector<CycMatrix> EquivariantSetting::build_sym_action(long m) const {
  const std::size_t vars = group().dimension();
  const auto& mono = monomial_basis(vars, m);
  std::vector<CycMatrix> out;
  out.reserve(group().order());
  for (std::size_t g = 0; g < group().order(); ++g) {
    const CycMatrix& ginv = group().element(group().inverse(g));
    // g . x_i = sum_k (g^{-1})_{ik} x_k
    std::vector<Vec> linear(vars);
    for (std::size_t i = 0; i < vars; ++i) linear[i] = ginv.row(i);
    CycMatrix s(mono.size(), mono.size());
    for (std::size_t c = 0; c < mono.size(); ++c) {
      Vec poly{CycNum(1)};
      long deg = 0;
      for (std::size_t i = 0; i < vars; ++i) {
        for (int p = 0; p < mono.exponents(c)[i]; ++p) {
          poly = poly_mul(vars, deg, poly, 1, linear[i]);
          ++deg;
        }
      }
      for (std::size_t r = 0; r < mono.size(); ++r) s(r, c) = poly[r];
    }
    out.push_back(std::move(s));
  }
  return out;
}

CycMatrix reynolds_projector(const EquivariantSetting& s, long m, std::size_t rho,
                             std::size_t sigma) {
  const auto& g = s.group();
  const auto& src = s.irreps()[rho];
  const auto& tgt = s.irreps()[sigma];
  const auto& actions = s.sym_action(m);
  const std::size_t width = actions.front().rows() * tgt.dim * src.dim;
  CycMatrix sum(width, width);
  for (std::size_t e = 0; e < g.order(); ++e) {
    // (g.phi) = sigma(g) . (g.poly) . rho(g)^{-1}; on flat (mono, r, c) tensors
    // this is S_g (x) sigma(g) (x) rho(g^{-1})^T.
    CycMatrix a = kronecker(kronecker(actions[e], tgt.matrices[e]),
                            src.matrices[g.inverse(e)].transpose());
    sum = sum + a;
  }
  CycNum inv = CycNum(1) / CycNum(static_cast<long>(g.order()));
  for (std::size_t i = 0; i < width; ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      if (!sum(i, j).is_zero()) sum(i, j) *= inv;
    }
  }
  return sum;
}

HomSpaceBasis EquivariantSetting::build_hom_basis(long m, std::size_t rho, std::size_t sigma) const {
  HomSpaceBasis h;
  h.degree = m;
  h.source_irrep = rho;
  h.target_irrep = sigma;
  h.source_dim = irreps()[rho].dim;
  h.target_dim = irreps()[sigma].dim;
  if (m < 0) {
    h.monomial_count = 0;
    h.basis.width = 0;
    return h;
  }
  h.monomial_count = monomial_basis(group().dimension(), m).size();
  CycMatrix p = reynolds_projector(*this, m, rho, sigma);
  std::vector<Vec> images;
  images.reserve(p.cols());
  for (std::size_t c = 0; c < p.cols(); ++c) images.push_back(p.col(c));
  h.basis = rref(std::move(images), h.width());
  return h;
}

const HomSpaceBasis& EquivariantSetting::hom_basis(long m, std::size_t rho, std::size_t sigma) const {
  if (rho >= num_irreps() || sigma >= num_irreps()) {
    throw Error(Errc::InvalidParameter, "irrep index out of range");
  }
  return *cached(data_->mu, data_->hom_cache, std::make_tuple(m, rho, sigma), [&] {
    return std::make_unique<HomSpaceBasis>(build_hom_basis(m, rho, sigma));
  });
}

Vec multiply_tensors(const HomSpaceBasis& fs, const Vec& f, const HomSpaceBasis& gs, const Vec& g,
                     std::size_t vars) {
  const auto& mf = monomial_basis(vars, fs.degree);
  const auto& mg = monomial_basis(vars, gs.degree);
  const auto& mc = monomial_basis(vars, fs.degree + gs.degree);
  const std::size_t dr = fs.source_dim;   // rho
  const std::size_t ds = fs.target_dim;   // sigma
  const std::size_t dt = gs.target_dim;   // tau
  Vec out(mc.size() * dt * dr);
  std::vector<int> e(vars);
  for (std::size_t a = 0; a < mf.size(); ++a) {
    bool any = false;
    for (std::size_t x = 0; x < ds * dr && !any; ++x) any = !f[a * ds * dr + x].is_zero();
    if (!any) continue;
    for (std::size_t b = 0; b < mg.size(); ++b) {
      for (std::size_t v = 0; v < vars; ++v) e[v] = mf.exponents(a)[v] + mg.exponents(b)[v];
      const std::size_t c = mc.index(e);
      for (std::size_t t = 0; t < dt; ++t) {
        for (std::size_t s = 0; s < ds; ++s) {
          const CycNum& gv = g[(b * dt + t) * ds + s];
          if (gv.is_zero()) continue;
          for (std::size_t r = 0; r < dr; ++r) {
            const CycNum& fv = f[(a * ds + s) * dr + r];
            if (fv.is_zero()) continue;
            out[(c * dt + t) * dr + r] += gv * fv;
          }
        }
      }
    }
  }
  return out;
}

CompositionTable EquivariantSetting::build_composition(long m1, std::size_t rho, std::size_t sigma,
                                                       long m2, std::size_t tau) const {
  const auto& fs = hom_basis(m1, rho, sigma);
  const auto& gs = hom_basis(m2, sigma, tau);
  const auto& cs = hom_basis(m1 + m2, rho, tau);
  CompositionTable table;
  table.coeffs.assign(fs.size(), std::vector<Vec>(gs.size()));
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (std::size_t j = 0; j < gs.size(); ++j) {
      Vec prod = multiply_tensors(fs, fs.element(i), gs, gs.element(j), group().dimension());
      auto coords = cs.basis.coordinates(prod);
      if (!coords) throw Error(Errc::BasisMismatch, "composite is not invariant");
      table.coeffs[i][j] = std::move(*coords);
    }
  }
  return table;
}

const CompositionTable& EquivariantSetting::composition(long m1, std::size_t rho, std::size_t sigma,
                                                        long m2, std::size_t tau) const {
  return *cached(data_->mu, data_->comp_cache, std::make_tuple(m1, rho, sigma, m2, tau), [&] {
    return std::make_unique<CompositionTable>(build_composition(m1, rho, sigma, m2, tau));
  });
}

const HomSpaceBasis& invariant_hom_basis(const EquivariantSetting& s, long a, long b,
                                         std::size_t rho, std::size_t sigma, bool lenient) {
  if (b < a && !lenient) {
    throw Error(Errc::NegativeDegree, "Hom from O(" + std::to_string(a) + ") to O(" +
                                          std::to_string(b) + ") has negative degree");
  }
  return s.hom_basis(b - a, rho, sigma);
}

Vec compose_hom(const EquivariantSetting& s, const HomSpaceBasis& fs, const Vec& f,
                const HomSpaceBasis& gs, const Vec& g) {
  if (fs.target_irrep != gs.source_irrep) {
    throw Error(Errc::BasisMismatch, "middle objects do not match");
  }
  if (f.size() != fs.size() || g.size() != gs.size()) {
    throw Error(Errc::BasisMismatch, "coordinate vector length does not match basis");
  }
  const auto& cs = s.hom_basis(fs.degree + gs.degree, fs.source_irrep, gs.target_irrep);
  Vec out(cs.size());
  if (fs.degree < 0 || gs.degree < 0) return out;
  const auto& table = s.composition(fs.degree, fs.source_irrep, fs.target_irrep, gs.degree,
                                    gs.target_irrep);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (std::size_t j = 0; j < gs.size(); ++j) {
      if (g[j].is_zero()) continue;
      out = add_scaled(std::move(out), table.coeffs[i][j], f[i] * g[j]);
    }
  }
  return out;
}

}  // namespace excoll
