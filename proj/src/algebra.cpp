#include "exdyn/algebra.hpp"

#include <set>

namespace exdyn {

std::string to_string(Algebra algebra) {
  switch (algebra) {
    case Algebra::su11: return "su11";
    case Algebra::su2: return "su2";
    case Algebra::heisenberg: return "heisenberg";
  }
  return "?";
}

std::string to_string(Ladder alpha) {
  switch (alpha) {
    case Ladder::raise: return "+";
    case Ladder::lower: return "-";
    case Ladder::diagonal: return "0";
  }
  return "?";
}

int ladder_shift(Ladder alpha) {
  switch (alpha) {
    case Ladder::raise: return -1;
    case Ladder::lower: return 1;
    case Ladder::diagonal: return 0;
  }
  return 0;
}

namespace {

void check_slot(int slot, const SectorsPtr& sectors) {
  if (slot < 0 || slot >= sectors->space().arity) {
    throw ShapeError("slot " + std::to_string(slot) + " outside " + to_string(sectors->space()));
  }
}

State moved(State s, int slot, long delta) {
  s[static_cast<std::size_t>(slot)] += delta;
  return s;
}

}  // namespace

SectorOperator k_operator(Ladder alpha, const Rational& kappa, int slot, SectorsPtr sectors) {
  if (sgn(kappa) <= 0) throw ParameterError("K operator needs kappa > 0");
  check_slot(slot, sectors);
  const auto i = static_cast<std::size_t>(slot);
  return SectorOperator::from_action(sectors, sectors, ladder_shift(alpha), [&](const State& s, const auto& emit) {
    const long n = s[i];
    switch (alpha) {
      case Ladder::raise: emit(moved(s, slot, 1), kappa + n); break;
      case Ladder::lower: emit(moved(s, slot, -1), Rational(n)); break;
      case Ladder::diagonal: emit(s, kappa / 2 + n); break;
    }
  });
}

SectorOperator j_operator(Ladder alpha, long gamma, int slot, SectorsPtr sectors, JVariant variant) {
  if (gamma < 1) throw ParameterError("J operator needs gamma >= 1");
  check_slot(slot, sectors);
  const auto i = static_cast<std::size_t>(slot);
  const auto& space = sectors->space();
  if (!space.bounded() || space.capacity[i] > gamma) {
    throw CapacityError("J operator with gamma " + std::to_string(gamma) + " on slot " + std::to_string(slot) +
                        " of " + to_string(space) + " would see states above its capacity");
  }
  int shift = ladder_shift(alpha);
  if (alpha == Ladder::raise && variant == JVariant::verbatim) shift = 1;
  return SectorOperator::from_action(sectors, sectors, shift, [&](const State& s, const auto& emit) {
    const long n = s[i];
    switch (alpha) {
      case Ladder::raise:
        if (variant == JVariant::forward) {
          emit(moved(s, slot, 1), Rational(gamma - n));
        } else if (n > 0) {
          // f(-1) = 0
          emit(moved(s, slot, -1), Rational(gamma - n));
        }
        break;
      case Ladder::lower: emit(moved(s, slot, -1), Rational(n)); break;
      case Ladder::diagonal: emit(s, make_rational(gamma, 2) - n); break;
    }
  });
}

SectorOperator ladder_operator(Ladder alpha, int slot, SectorsPtr sectors, const Rational& coefficient) {
  if (alpha == Ladder::diagonal) throw DescriptorError("the Heisenberg ladder has no diagonal generator");
  check_slot(slot, sectors);
  const auto i = static_cast<std::size_t>(slot);
  return SectorOperator::from_action(sectors, sectors, ladder_shift(alpha), [&](const State& s, const auto& emit) {
    if (alpha == Ladder::raise) {
      emit(moved(s, slot, 1), coefficient);
    } else {
      emit(moved(s, slot, -1), coefficient * s[i]);
    }
  });
}

SectorOperator site_sum(const std::vector<SectorOperator>& terms) {
  if (terms.empty()) throw ShapeError("site_sum of no operators");
  SectorOperator total = terms.front();
  for (std::size_t i = 1; i < terms.size(); ++i) total = total + terms[i];
  return total;
}

std::string SymmetryDescriptor::to_string() const {
  std::string name;
  switch (algebra) {
    case Algebra::su11: name = "K"; break;
    case Algebra::su2: name = "J"; break;
    case Algebra::heisenberg: name = alpha == Ladder::raise ? "a+" : "a"; break;
  }
  std::string out;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (i) out += " + ";
    if (algebra == Algebra::heisenberg) {
      out += exdyn::to_string(params[i]) + "*" + name + "_" + std::to_string(slots[i]);
    } else {
      out += name + "^{" + exdyn::to_string(alpha) + "," + exdyn::to_string(params[i]) + "}_" +
             std::to_string(slots[i]);
    }
  }
  return out;
}

SymmetryDescriptor combine_terms(const std::vector<SymmetryDescriptor>& terms) {
  if (terms.empty()) throw DescriptorError("no terms to combine");
  SymmetryDescriptor out;
  out.algebra = terms.front().algebra;
  out.alpha = terms.front().alpha;
  std::set<int> seen;
  for (const auto& t : terms) {
    if (t.algebra != out.algebra) throw DescriptorError("terms belong to different algebras");
    if (t.alpha != out.alpha) {
      throw DescriptorError("mismatched generators " + exdyn::to_string(out.alpha) + " and " +
                            exdyn::to_string(t.alpha) + " cannot be lumped together");
    }
    if (t.params.size() != t.slots.size()) throw DescriptorError("descriptor needs one parameter per slot");
    for (std::size_t i = 0; i < t.slots.size(); ++i) {
      if (!seen.insert(t.slots[i]).second) throw DescriptorError("slot repeated in descriptor");
      out.slots.push_back(t.slots[i]);
      out.params.push_back(t.params[i]);
    }
  }
  return out;
}

SectorOperator build_symmetry(const SymmetryDescriptor& d, SectorsPtr sectors) {
  if (d.params.size() != d.slots.size() || d.slots.empty()) {
    throw DescriptorError("descriptor needs one parameter per slot");
  }
  std::vector<SectorOperator> terms;
  for (std::size_t i = 0; i < d.slots.size(); ++i) {
    switch (d.algebra) {
      case Algebra::su11: terms.push_back(k_operator(d.alpha, d.params[i], d.slots[i], sectors)); break;
      case Algebra::su2:
        if (!is_integer(d.params[i])) throw DescriptorError("SU(2) parameters must be integers");
        terms.push_back(j_operator(d.alpha, d.params[i].get_num().get_si(), d.slots[i], sectors));
        break;
      case Algebra::heisenberg: terms.push_back(ladder_operator(d.alpha, d.slots[i], sectors, d.params[i])); break;
    }
  }
  return site_sum(terms);
}

SymmetryDescriptor lumped_symmetry(const SymmetryDescriptor& d, const AdditionMap& map) {
  if (d.params.size() != d.slots.size()) throw DescriptorError("descriptor needs one parameter per slot");
  SymmetryDescriptor out;
  out.algebra = d.algebra;
  out.alpha = d.alpha;
  for (std::size_t g = 0; g < map.groups.size(); ++g) {
    std::vector<Rational> group_params;
    for (int slot : map.groups[g]) {
      bool found = false;
      for (std::size_t i = 0; i < d.slots.size(); ++i) {
        if (d.slots[i] == slot) {
          group_params.push_back(d.params[i]);
          found = true;
        }
      }
      if (!found) {
        throw DescriptorError("slot " + std::to_string(slot) + " of lumped group " + std::to_string(g) +
                              " is not covered by " + d.to_string());
      }
    }
    Rational param(0);
    if (d.algebra == Algebra::heisenberg && d.alpha == Ladder::lower) {
      for (const auto& p : group_params) {
        if (p != group_params.front()) {
          throw DescriptorError("annihilation operators with unequal coefficients are not lumpable");
        }
      }
      param = group_params.front();
    } else {
      for (const auto& p : group_params) param += p;
    }
    out.slots.push_back(static_cast<int>(g));
    out.params.push_back(param);
  }
  return out;
}

}  // namespace exdyn
