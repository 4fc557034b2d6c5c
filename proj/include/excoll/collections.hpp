#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "excoll/complex.hpp"

namespace excoll {

using IntMatrix = std::vector<std::vector<long long>>;

/// A member of a collection. Objects whose complex could not be built (after
/// an engine failure) are carried as K-classes only.
struct CollectionObject {
  std::string label;
  std::optional<EqComplex> complex;
  KClass kclass;
  std::size_t uid = 0;

  static CollectionObject make(std::string label, EqComplex c);
  static CollectionObject k_only(std::string label, KClass k);
};

/// One adjacent swap (X, E) -> (E, R_E X) at positions (position, position + 1).
struct MutationRecord {
  std::size_t position = 0;
  std::string moved;       // E
  std::string passed;      // X
  std::string result;      // label of R_E X
  long long chi = 0;       // chi(X, E)
  bool nontrivial = false;
  bool k_only = false;
  /// New Gram == U^T old Gram U for the elementary unimodular U of the step.
  bool base_change_verified = false;
};

struct ProvenanceEntry {
  std::string action;
  std::string detail;
};

struct CheckReport {
  bool pass = true;
  std::string message;
};

class ExcCollection {
 public:
  ExcCollection(EquivariantSetting setting, std::vector<CollectionObject> objects);

  const EquivariantSetting& setting() const { return setting_; }
  const std::vector<CollectionObject>& objects() const { return objects_; }
  const CollectionObject& object(std::size_t i) const { return objects_[i]; }
  std::size_t size() const { return objects_.size(); }
  std::vector<std::string> labels() const;
  bool has_complexes() const;

  /// Ext^k(E_i, E_j) dimensions from the Hom complex (cached per object pair).
  const std::map<long, long>& ext(std::size_t i, std::size_t j) const;
  /// chi(E_i, E_j): from Ext tables when both complexes exist, else from K-classes.
  long long euler(std::size_t i, std::size_t j) const;
  IntMatrix gram() const;
  IntMatrix gram_from_kclasses() const;
  /// dim Hom(E_i, E_j) in degree 0.
  IntMatrix hom_dims() const;

  std::vector<ProvenanceEntry> provenance;
  std::vector<MutationRecord> mutations;

  ExcCollection subcollection(const std::vector<std::size_t>& keep, const std::string& why) const;

 private:
  EquivariantSetting setting_;
  std::vector<CollectionObject> objects_;
};

bool is_unitriangular(const IntMatrix& g);
/// Integer determinant of the matrix whose rows are the K-classes.
BigInt kclass_determinant(const ExcCollection& coll);

/// O(i) (x) rho_j for 0 <= i <= n, 0 <= j <= r, twist-major.
ExcCollection beilinson_collection(const EquivariantSetting& s);

CheckReport check_exceptional(const ExcCollection& coll);
CheckReport check_strong(const ExcCollection& coll);

/// Moves the object at `from` to position `to` < from by adjacent swaps
/// (X, E) -> (E, R_E X), nearest neighbour first. Every step records the
/// elementary base change and verifies it against recomputed Ext tables.
ExcCollection move_left(const ExcCollection& coll, std::size_t from, std::size_t to);

/// Brings E_{i,0} to position i for i = 1..n, producing
/// (E_{0,0}, ..., E_{n,0}, F_{0,1}, ..., F_{n,r}).
ExcCollection cascade_mutation(const ExcCollection& beilinson);

struct VeroneseBlocks {
  long d = 1;
  long e = 1;
  /// Weight of every object in the collection order.
  std::vector<long> weights;
  /// blocks[w]: indices of weight w, in collection order. Block 0 holds
  /// O(0) (x) rho_0 and is the pullback block.
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t pullback_block = 0;
};

/// Weight of O(i) (x) rho_j under T_d: (c_j - i) mod e, rho_j(zeta Id) = zeta^{c_j}.
long line_bundle_weight(const EquivariantSetting& s, const CentralSubgroupInfo& t,
                        const EqLineBundle& l);
/// Throws Errc::NotADivisor or Errc::OrthogonalityFailure.
VeroneseBlocks veronese_blocks(const ExcCollection& coll, long d);

enum class DsingMode { CrossedProduct, InvariantVeronese };

/// Gorenstein parameter a = (n+1)/d; throws Errc::NotADivisor.
long gorenstein_parameter(const EquivariantSetting& s, long d);

/// Crossed product: drop O(k) (x) rho_j for k < a from the Beilinson
/// collection. Invariant Veronese: take the pullback block, move the objects
/// O(d i) (x) rho_0 (i < a) to the front, drop them, then normalise shifts.
ExcCollection dsing_collection(const EquivariantSetting& s, DsingMode mode, long d);

/// Shift objects so that every nonzero Hom between members sits in degree 0
/// where that is consistently possible. Leaves the collection unchanged when
/// it is already strong or no consistent choice exists.
ExcCollection normalize_shifts(const ExcCollection& coll);

struct Quiver {
  std::vector<std::string> nodes;
  IntMatrix arrows;
  std::vector<std::vector<std::size_t>> components;
};

/// Arrows = dim Hom(E_i, E_j) minus the rank of composites through members
/// strictly between i and j. Throws Errc::NotStrong.
Quiver quiver(const ExcCollection& coll);

/// Tensor every object (or only those listed) by O(k).
ExcCollection tensor_twist(const ExcCollection& coll, long k,
                           const std::optional<std::vector<std::size_t>>& only = std::nullopt);

}  // namespace excoll
