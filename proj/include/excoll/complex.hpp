#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "excoll/cohomology.hpp"
#include "excoll/equivariant.hpp"
#include "excoll/linalg.hpp"

namespace excoll {

using Summands = std::vector<EqLineBundle>;

/// Map between two direct sums of line bundles. Entry [t][s] holds the
/// coordinates of the component from source summand s to target summand t in
/// the invariant Hom basis of the matching degree (empty for negative degree).
using Block = std::vector<std::vector<Vec>>;

Block zero_block(const EquivariantSetting& s, const Summands& source, const Summands& target);
/// g o f for f: source -> middle and g: middle -> target.
Block compose_blocks(const EquivariantSetting& s, const Summands& source, const Summands& middle,
                     const Summands& target, const Block& f, const Block& g);
Block add_blocks(const Block& a, const Block& b);
Block scale_block(const Block& a, const CycNum& factor);
bool is_zero_block(const Block& a);

/// Bounded complex of direct sums of equivariant line bundles with explicit
/// differentials d^p: C^p -> C^{p+1}. Every constructor validates d o d = 0,
/// block shapes and the twist window (max twist - min twist <= n).
class EqComplex {
 public:
  EqComplex() = default;
  /// Throws Errc::InvalidComplex or Errc::WindowViolation.
  EqComplex(EquivariantSetting setting, std::map<long, Summands> terms,
            std::map<long, Block> differentials);
  static EqComplex from_line_bundle(const EquivariantSetting& s, const EqLineBundle& l);
  static EqComplex direct_sum(const std::vector<EqComplex>& parts);

  const EquivariantSetting& setting() const { return *setting_; }
  const std::map<long, Summands>& terms() const { return terms_; }
  const Summands& term(long p) const;
  /// d^p: C^p -> C^{p+1}; a zero block when absent.
  Block differential(long p) const;

  bool is_zero() const { return terms_.empty(); }
  long min_degree() const { return terms_.begin()->first; }
  long max_degree() const { return terms_.rbegin()->first; }
  long min_twist() const;
  long max_twist() const;
  std::size_t summand_count() const;
  /// Single line bundle in degree 0 with nothing else.
  bool is_line_bundle() const;

  /// C[k]^p = C^{p+k}, differential multiplied by (-1)^k.
  EqComplex shift(long k) const;
  /// C (x) O(k); Hom coordinates depend only on twist differences.
  EqComplex twist(long k) const;
  KClass kclass() const;
  /// One line per nonzero degree, e.g. "0: O(0)@rho_2".
  std::string describe() const;

  friend bool operator==(const EqComplex& a, const EqComplex& b) {
    return a.terms_ == b.terms_ && a.diffs_ == b.diffs_;
  }

 private:
  void validate() const;

  std::optional<EquivariantSetting> setting_;
  std::map<long, Summands> terms_;
  std::map<long, Block> diffs_;
};

/// Hom complex Hom^k = prod_p Hom(C^p, D^{p+k}) with
/// delta(f) = d_D o f - (-1)^k f o d_C.
struct HomComplex {
  struct Slot {
    long p = 0;
    std::size_t target = 0;
    std::size_t source = 0;
    std::size_t offset = 0;
    std::size_t size = 0;
  };
  long min_degree = 0;
  long max_degree = -1;
  std::map<long, std::vector<Slot>> layout;
  std::map<long, std::size_t> dims;
  /// d[k]: Hom^k -> Hom^{k+1}, a dims[k+1] x dims[k] matrix.
  std::map<long, CycMatrix> d;

  std::size_t dim(long k) const;
  const Slot* find(long k, long p, std::size_t target, std::size_t source) const;
};

/// Throws Errc::WindowViolation unless b - a >= -n for every source twist a
/// of C and target twist b of D.
HomComplex hom_complex(const EqComplex& c, const EqComplex& d);
/// Nonzero cohomology dimensions of the Hom complex, i.e. Ext^k(C, D).
std::map<long, long> ext_dims(const EqComplex& c, const EqComplex& d);
long euler_from_ext(const std::map<long, long>& dims);

/// Degree-k morphism of complexes, components C^p -> D^{p+k}.
struct ChainMap {
  EqComplex source;
  EqComplex target;
  long degree = 0;
  std::map<long, Block> components;

  Block component(long p) const;
};

Vec flatten(const HomComplex& h, const ChainMap& f);
ChainMap unflatten(const EqComplex& c, const EqComplex& d, const HomComplex& h, long k,
                   const Vec& v);
/// d_D o f - (-1)^k f o d_C == 0, checked exactly.
bool is_chain_map(const ChainMap& f);
/// g o f.
ChainMap compose(const ChainMap& f, const ChainMap& g);
ChainMap identity_map(const EqComplex& c);

/// Cycle representatives of a basis of H^k(Hom(C, D)): cycles are scanned
/// in nullspace order and kept when independent modulo boundaries.
std::vector<ChainMap> cohomology_basis(const EqComplex& c, const EqComplex& d, long k = 0);

/// Shift k0 that moves Hom(E, F) into degree 0, or nullopt when Hom(E, F) = 0.
/// Throws Errc::NonConcentratedHom when several degrees are nonzero.
std::optional<long> concentrated_degree(const EqComplex& e, const EqComplex& f);

/// R_F E: E in its own degrees glued to Hom(E, F)^vee (x) F[k0] one degree
/// higher by the evaluation map. Returns E itself when Hom(E, F) = 0.
EqComplex right_mutation(const EqComplex& e, const EqComplex& f);
/// L_E F: Hom(E, F) (x) E[-k0] one degree lower glued to F by the
/// coevaluation map. Returns F itself when Hom(E, F) = 0.
EqComplex left_mutation(const EqComplex& e, const EqComplex& f);

}  // namespace excoll
