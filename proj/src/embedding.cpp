// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 the ilp authors. All rights reserved.

#include "ilp/embedding.hpp"

#include <unordered_map>

namespace ilp {

BiFml chi(Fml a) {
  static std::unordered_map<Fml, BiFml> cache;
  const auto it = cache.find(a);
  if (it != cache.end()) return it->second;
  BiFml out = nullptr;
  switch (a->kind()) {
    case Kind::Bot:
      out = BiFormula::mk_bot();
      break;
    case Kind::Var:
      out = BiFormula::mk_var(a->var());
      break;
    case Kind::Neg:
      out = BiFormula::mk_neg(chi(a->lhs()));
      break;
    case Kind::And:
      out = BiFormula::mk_and(chi(a->lhs()), chi(a->rhs()));
      break;
    case Kind::Or:
      out = BiFormula::mk_or(chi(a->lhs()), chi(a->rhs()));
      break;
    case Kind::Imp:
      out = BiFormula::mk_imp(chi(a->lhs()), chi(a->rhs()));
      break;
    case Kind::Box:
      out = BiFormula::mk_boxk(0, chi(a->lhs()));
      break;
    case Kind::Rhd:
      out = BiFormula::mk_boxk(
          0, BiFormula::mk_imp(chi(a->lhs()),
                               BiFormula::mk_diamond1(chi(a->rhs()))));
      break;
  }
  ILP_ASSERT(out != nullptr, "translation covered all connectives");
  cache.emplace(a, out);
  return out;
}

BimodalModel transfer(const SimplifiedModel& m) {
  m.validate();
  BimodalModel out;
  out.names = m.names;
  out.R0 = m.R;
  out.R1 = m.S;
  out.valuation = m.valuation;
  out.validate();
  return out;
}

BimodalModel fpp_failure_frame(const std::vector<std::string>& vars) {
  BimodalModel out;
  out.names = {"x", "y"};
  out.R0 = empty_relation(2);
  out.R0[0][1] = true;
  out.R1 = empty_relation(2);
  out.R1[1][0] = true;
  for (const std::string& v : vars)
    out.valuation.emplace(v, std::vector<bool>(2, false));
  out.validate();
  return out;
}

}  // namespace ilp
