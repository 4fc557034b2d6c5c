#include "excoll/cohomology.hpp"

#include <map>

#include "excoll/error.hpp"

namespace excoll {

std::string EqLineBundle::label() const {
  return "O(" + std::to_string(twist) + ")@rho_" + std::to_string(irrep);
}

KClass KClass::zero(const EquivariantSetting& s) {
  return KClass(static_cast<std::size_t>(s.n() + 1), s.num_irreps());
}

KClass KClass::unit(const EquivariantSetting& s, std::size_t twist, std::size_t irrep) {
  KClass k = zero(s);
  k.at(twist, irrep) = 1;
  return k;
}

KClass& KClass::operator+=(const KClass& o) {
  if (o.coeffs_.size() != coeffs_.size()) throw Error(Errc::GroupMismatch, "KClass rank mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

KClass& KClass::operator-=(const KClass& o) {
  if (o.coeffs_.size() != coeffs_.size()) throw Error(Errc::GroupMismatch, "KClass rank mismatch");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

KClass operator*(long long s, KClass a) {
  for (auto& c : a.coeffs_) c *= s;
  return a;
}

CharacterVec ext_character(const EquivariantSetting& s, long m, long k) {
  const long n = s.n();
  if (k == 0 && m >= 0) return s.sym_vdual(m);
  if (k == n && m <= -n - 1) return s.sym_v(-m - n - 1) * s.ext_v(n + 1);
  return zero_character(s.group());
}

long ext_dim_equivariant(const EquivariantSetting& s, const EqLineBundle& source,
                         const EqLineBundle& target, long k) {
  CharacterVec chi = ext_character(s, target.twist - source.twist, k);
  if (chi.is_zero()) return 0;
  return to_integer(character_inner_product(s.group(), chi * s.irrep_character(target.irrep),
                                            s.irrep_character(source.irrep)),
                    "Ext dimension");
}

KClass koszul_reduce(const EquivariantSetting& s, long m, const CharacterVec& chi) {
  const long n = s.n();
  std::map<long, CharacterVec> terms{{m, chi}};
  auto add = [&](long twist, const CharacterVec& c) {
    auto it = terms.find(twist);
    if (it == terms.end()) {
      terms.emplace(twist, c);
    } else {
      it->second = it->second + c;
    }
  };
  // Push twists above n downwards.
  while (!terms.empty() && terms.rbegin()->first > n) {
    auto top = std::prev(terms.end());
    long t = top->first;
    CharacterVec c = top->second;
    terms.erase(top);
    if (c.is_zero()) continue;
    // [O(t)] = sum_{k=1}^{n+1} (-1)^{k+1} [Lambda^k V^vee (x) O(t-k)]
    for (long k = 1; k <= n + 1; ++k) {
      CharacterVec term = s.ext_vdual(k) * c;
      add(t - k, k % 2 == 1 ? term : zero_character(s.group()) - term);
    }
  }
  // Push negative twists upwards.
  const CharacterVec det_inverse = s.det_vdual().conjugate();
  while (!terms.empty() && terms.begin()->first < 0) {
    auto bottom = terms.begin();
    long t = bottom->first;
    CharacterVec c = bottom->second;
    terms.erase(bottom);
    if (c.is_zero()) continue;
    // [O(t)] = (-1)^n sum_{k=0}^{n} (-1)^k [Lambda^k V^vee (x) det^{-1} (x) O(t+n+1-k)]
    CharacterVec base = det_inverse * c;
    for (long k = 0; k <= n; ++k) {
      CharacterVec term = s.ext_vdual(k) * base;
      bool positive = ((n + k) % 2) == 0;
      add(t + n + 1 - k, positive ? term : zero_character(s.group()) - term);
    }
  }
  KClass out = KClass::zero(s);
  for (const auto& [twist, c] : terms) {
    auto mult = s.decompose(c);
    for (std::size_t j = 0; j < mult.size(); ++j) {
      out.at(static_cast<std::size_t>(twist), j) += mult[j];
    }
  }
  return out;
}

KClass koszul_reduce(const EquivariantSetting& s, long m, std::size_t irrep) {
  const long n = s.n();
  if (m >= 0 && m <= n) return KClass::unit(s, static_cast<std::size_t>(m), irrep);
  return koszul_reduce(s, m, s.irrep_character(irrep));
}

long long euler_pairing(const EquivariantSetting& s, const EqLineBundle& a, const EqLineBundle& b) {
  long long total = 0;
  for (long k = 0; k <= s.n(); ++k) {
    long d = ext_dim_equivariant(s, a, b, k);
    total += (k % 2 == 0) ? d : -d;
  }
  return total;
}

long long euler_pairing(const EquivariantSetting& s, const KClass& x, const KClass& y) {
  long long total = 0;
  for (std::size_t i = 0; i < x.twists(); ++i) {
    for (std::size_t j = 0; j < x.irreps(); ++j) {
      long long xa = x.at(i, j);
      if (xa == 0) continue;
      for (std::size_t i2 = 0; i2 < y.twists(); ++i2) {
        for (std::size_t j2 = 0; j2 < y.irreps(); ++j2) {
          long long yb = y.at(i2, j2);
          if (yb == 0) continue;
          total += xa * yb *
                   euler_pairing(s, EqLineBundle{static_cast<long>(i), j},
                                 EqLineBundle{static_cast<long>(i2), j2});
        }
      }
    }
  }
  return total;
}

}  // namespace excoll
