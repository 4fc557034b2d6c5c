#include "excoll/characters.hpp"

#include "excoll/error.hpp"

namespace excoll {

bool CharacterVec::is_zero() const {
  for (const auto& v : values) {
    if (!v.is_zero()) return false;
  }
  return true;
}

CharacterVec CharacterVec::conjugate() const {
  CharacterVec out = *this;
  for (auto& v : out.values) v = v.conjugate();
  return out;
}

namespace {
void check_same(const CharacterVec& a, const CharacterVec& b) {
  if (a.size() != b.size()) throw Error(Errc::GroupMismatch, "characters of different groups");
}
}  // namespace

CharacterVec operator+(const CharacterVec& a, const CharacterVec& b) {
  check_same(a, b);
  CharacterVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] += b.values[i];
  return out;
}

CharacterVec operator-(const CharacterVec& a, const CharacterVec& b) {
  check_same(a, b);
  CharacterVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] -= b.values[i];
  return out;
}

CharacterVec operator*(const CharacterVec& a, const CharacterVec& b) {
  check_same(a, b);
  CharacterVec out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.values[i] *= b.values[i];
  return out;
}

CharacterVec operator*(const CycNum& s, const CharacterVec& a) {
  CharacterVec out = a;
  for (auto& v : out.values) v *= s;
  return out;
}

CharacterVec trivial_character(const FiniteMatrixGroup& g) {
  return CharacterVec{std::vector<CycNum>(g.num_classes(), CycNum(1))};
}

CharacterVec zero_character(const FiniteMatrixGroup& g) {
  return CharacterVec{std::vector<CycNum>(g.num_classes(), CycNum(0))};
}

CharacterVec regular_character(const FiniteMatrixGroup& g) {
  CharacterVec out = zero_character(g);
  out.values[0] = CycNum(static_cast<long>(g.order()));
  return out;
}

CharacterVec character_of(const FiniteMatrixGroup& g, const std::vector<CycMatrix>& rep) {
  if (rep.size() != g.order()) throw Error(Errc::GroupMismatch, "one matrix per element required");
  CharacterVec out;
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    out.values.push_back(rep[g.class_representative(c)].trace());
  }
  return out;
}

CharacterVec defining_character(const FiniteMatrixGroup& g) { return character_of(g, g.elements()); }

Rat character_inner_product(const FiniteMatrixGroup& g, const CharacterVec& a,
                            const CharacterVec& b) {
  if (a.size() != g.num_classes() || b.size() != g.num_classes()) {
    throw Error(Errc::GroupMismatch, "character does not match the group's classes");
  }
  CycNum sum;
  for (std::size_t c = 0; c < g.num_classes(); ++c) {
    sum += CycNum(static_cast<long>(g.class_size(c))) * a.values[c] * b.values[c].conjugate();
  }
  sum /= CycNum(static_cast<long>(g.order()));
  if (!sum.is_rational()) {
    throw Error(Errc::GroupMismatch, "inner product is not rational: " + sum.to_string());
  }
  return sum.rational_part();
}

long to_integer(const Rat& r, const char* what) {
  if (r.get_den() != 1) {
    throw Error(Errc::InvalidParameter, std::string(what) + " is not integral: " + r.get_str());
  }
  return r.get_num().get_si();
}

IrrepReport verify_irreps(const FiniteMatrixGroup& g, const std::vector<Irrep>& irreps) {
  auto fail = [](std::string msg) { return IrrepReport{false, std::move(msg)}; };
  if (irreps.empty()) return fail("no irreducible representations supplied");
  std::vector<CharacterVec> chars;
  long sum_sq = 0;
  for (const auto& rho : irreps) {
    if (rho.matrices.size() != g.order()) {
      return fail(rho.name + ": expected " + std::to_string(g.order()) + " matrices");
    }
    for (const auto& m : rho.matrices) {
      if (m.rows() != rho.dim || m.cols() != rho.dim) return fail(rho.name + ": wrong matrix size");
    }
    if (!rho.matrices[0].is_identity()) return fail(rho.name + ": identity not sent to Id");
    for (std::size_t a = 0; a < g.order(); ++a) {
      for (std::size_t b = 0; b < g.order(); ++b) {
        if (rho.matrices[a] * rho.matrices[b] != rho.matrices[g.multiply(a, b)]) {
          return fail(rho.name + ": not multiplicative at elements " + std::to_string(a) + ", " +
                      std::to_string(b));
        }
      }
    }
    sum_sq += static_cast<long>(rho.dim * rho.dim);
    chars.push_back(character_of(g, rho.matrices));
  }
  for (std::size_t i = 0; i < chars.size(); ++i) {
    for (std::size_t j = 0; j < chars.size(); ++j) {
      Rat ip = character_inner_product(g, chars[i], chars[j]);
      if (ip != (i == j ? 1 : 0)) {
        return fail("inner product <" + irreps[i].name + ", " + irreps[j].name +
                    "> = " + ip.get_str());
      }
    }
  }
  if (sum_sq != static_cast<long>(g.order())) {
    return fail("sum of squared dimensions " + std::to_string(sum_sq) + " != |G| = " +
                std::to_string(g.order()));
  }
  if (irreps[0].dim != 1 || !(chars[0] == trivial_character(g))) {
    return fail(irreps[0].name + " is not the trivial representation");
  }
  return IrrepReport{true, "ok: sum of squares " + std::to_string(sum_sq) + " = |G|"};
}

CharacterVec sym_power_character(const FiniteMatrixGroup& g, const CharacterVec& chi, long m) {
  if (m < 0) return zero_character(g);
  std::vector<CharacterVec> h{trivial_character(g)};
  for (long j = 1; j <= m; ++j) {
    CharacterVec next = zero_character(g);
    for (std::size_t c = 0; c < g.num_classes(); ++c) {
      CycNum acc;
      for (long k = 1; k <= j; ++k) {
        acc += chi.values[g.power_class(c, k)] * h[static_cast<std::size_t>(j - k)].values[c];
      }
      next.values[c] = acc / CycNum(j);
    }
    h.push_back(std::move(next));
  }
  return h.back();
}

CharacterVec ext_power_character(const FiniteMatrixGroup& g, const CharacterVec& chi, long k) {
  if (k < 0) return zero_character(g);
  std::vector<CharacterVec> e{trivial_character(g)};
  for (long j = 1; j <= k; ++j) {
    CharacterVec next = zero_character(g);
    for (std::size_t c = 0; c < g.num_classes(); ++c) {
      CycNum acc;
      for (long i = 1; i <= j; ++i) {
        CycNum term = chi.values[g.power_class(c, i)] * e[static_cast<std::size_t>(j - i)].values[c];
        if (i % 2 == 1) {
          acc += term;
        } else {
          acc -= term;
        }
      }
      next.values[c] = acc / CycNum(j);
    }
    e.push_back(std::move(next));
  }
  return e.back();
}

long molien_dimension(const FiniteMatrixGroup& g, long m) {
  if (m < 0) return 0;
  CharacterVec dual = defining_character(g).conjugate();
  return to_integer(
      character_inner_product(g, sym_power_character(g, dual, m), trivial_character(g)),
      "Molien dimension");
}

}  // namespace excoll
