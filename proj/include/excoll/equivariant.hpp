#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "excoll/characters.hpp"
#include "excoll/linalg.hpp"
#include "excoll/matrix_group.hpp"

namespace excoll {

/// Monomials of a fixed degree in a fixed number of variables, in graded
/// lexicographic order (x_1^m first).
class MonomialBasis {
 public:
  MonomialBasis(std::size_t vars, long degree);

  std::size_t vars() const { return vars_; }
  long degree() const { return degree_; }
  std::size_t size() const { return exps_.size(); }
  const std::vector<int>& exponents(std::size_t i) const { return exps_[i]; }
  std::size_t index(const std::vector<int>& exps) const { return index_.at(exps); }

 private:
  std::size_t vars_;
  long degree_;
  std::vector<std::vector<int>> exps_;
  std::map<std::vector<int>, std::size_t> index_;
};

const MonomialBasis& monomial_basis(std::size_t vars, long degree);

/// Basis of the invariant part of Sym^m(V^vee) (x) Hom(rho, sigma), i.e. of
/// Hom(O(a) (x) rho, O(a+m) (x) sigma). A tensor is flattened with index
/// (monomial, row, col) where rows run over sigma and columns over rho.
struct HomSpaceBasis {
  long degree = 0;
  std::size_t source_irrep = 0;
  std::size_t target_irrep = 0;
  std::size_t monomial_count = 0;
  std::size_t target_dim = 0;
  std::size_t source_dim = 0;
  Echelon basis;

  std::size_t size() const { return basis.rank(); }
  std::size_t width() const { return monomial_count * target_dim * source_dim; }
  const Vec& element(std::size_t i) const { return basis.rows[i]; }
  std::size_t flat_index(std::size_t mono, std::size_t row, std::size_t col) const {
    return (mono * target_dim + row) * source_dim + col;
  }
};

/// Structure constants of composition: entry [i][j] holds the coordinates of
/// g_j o f_i in the basis of the composite Hom space.
struct CompositionTable {
  std::vector<std::vector<Vec>> coeffs;
};

/// A finite group with a verified list of irreducibles, acting on P^n through
/// its defining representation V. Coordinates x_1..x_{n+1} span V^vee and the
/// group acts on polynomials by (g.f)(v) = f(g^{-1} v).
///
/// Holds write-once caches of characters, invariant Hom bases and composition
/// tables; the caches are shared between copies and guarded by a mutex.
class EquivariantSetting {
 public:
  /// Throws Errc::IrrepVerificationFailed when verify_irreps fails.
  EquivariantSetting(FiniteMatrixGroup group, std::vector<Irrep> irreps);
  static EquivariantSetting from_builtin(const BuiltinKind& kind);

  const FiniteMatrixGroup& group() const { return data_->group; }
  const std::vector<Irrep>& irreps() const { return data_->irreps; }
  std::size_t num_irreps() const { return data_->irreps.size(); }
  /// Dimension of the projective space, dim V - 1.
  long n() const { return static_cast<long>(group().dimension()) - 1; }

  const CharacterVec& irrep_character(std::size_t j) const { return data_->irrep_chars[j]; }
  const CharacterVec& v_character() const { return data_->chi_v; }
  const CharacterVec& vdual_character() const { return data_->chi_vdual; }
  CharacterVec sym_vdual(long m) const;
  CharacterVec sym_v(long m) const;
  CharacterVec ext_vdual(long k) const;
  CharacterVec ext_v(long k) const;
  /// Character of Lambda^{n+1} V^vee.
  CharacterVec det_vdual() const { return ext_vdual(n() + 1); }
  bool in_special_linear() const;

  /// Multiplicity of each irreducible in a (virtual) character.
  std::vector<long> decompose(const CharacterVec& chi) const;
  /// Index of rho_j (x) lambda for a one-dimensional character lambda.
  std::size_t tensor_with_linear(std::size_t j, const CharacterVec& lambda) const;
  /// Exponent c with rho_j(zeta Id) = zeta^c Id, for zeta Id of order e.
  long central_exponent(std::size_t j, std::size_t scalar_element, long e) const;

  /// Invariant Hom basis of degree m; empty for m < 0.
  const HomSpaceBasis& hom_basis(long m, std::size_t rho, std::size_t sigma) const;
  const CompositionTable& composition(long m1, std::size_t rho, std::size_t sigma, long m2,
                                      std::size_t tau) const;
  /// Action of every group element on Sym^m(V^vee), columns are images of monomials.
  const std::vector<CycMatrix>& sym_action(long m) const;

 private:
  struct Data {
    FiniteMatrixGroup group;
    std::vector<Irrep> irreps;
    std::vector<CharacterVec> irrep_chars;
    CharacterVec chi_v;
    CharacterVec chi_vdual;
    std::mutex mu;
    std::map<long, CharacterVec> sym_vdual_cache;
    std::map<long, CharacterVec> sym_v_cache;
    std::map<long, CharacterVec> ext_vdual_cache;
    std::map<long, CharacterVec> ext_v_cache;
    std::map<long, std::unique_ptr<std::vector<CycMatrix>>> sym_action_cache;
    std::map<std::tuple<long, std::size_t, std::size_t>, std::unique_ptr<HomSpaceBasis>>
        hom_cache;
    std::map<std::tuple<long, std::size_t, std::size_t, long, std::size_t>,
             std::unique_ptr<CompositionTable>>
        comp_cache;
  };
  std::shared_ptr<Data> data_;

  HomSpaceBasis build_hom_basis(long m, std::size_t rho, std::size_t sigma) const;
  CompositionTable build_composition(long m1, std::size_t rho, std::size_t sigma, long m2,
                                     std::size_t tau) const;
  std::vector<CycMatrix> build_sym_action(long m) const;
};

/// Invariant basis of Hom(O(a) (x) rho, O(b) (x) sigma) via the Reynolds
/// projector. b < a throws Errc::NegativeDegree unless lenient.
const HomSpaceBasis& invariant_hom_basis(const EquivariantSetting& s, long a, long b,
                                         std::size_t rho, std::size_t sigma,
                                         bool lenient = false);

/// Reynolds projector on Sym^m(V^vee) (x) Hom(rho, sigma), as a matrix on flat tensors.
CycMatrix reynolds_projector(const EquivariantSetting& s, long m, std::size_t rho,
                             std::size_t sigma);

/// Composite of f (in f_space) followed by g (in g_space), in coordinates of
/// the composite space. Throws Errc::BasisMismatch for non-composable spaces.
Vec compose_hom(const EquivariantSetting& s, const HomSpaceBasis& f_space, const Vec& f,
                const HomSpaceBasis& g_space, const Vec& g);

/// Multiply two flattened tensors (f first, then g) without projecting to a basis.
Vec multiply_tensors(const HomSpaceBasis& f_space, const Vec& f, const HomSpaceBasis& g_space,
                     const Vec& g, std::size_t vars);

}  // namespace excoll
