#include "ltp/ring.hpp"

namespace ltp {

FqRing FqRing::make(const OLField* F, int m) {
  require(m >= 1, Code::InvalidArgument, "extension degree must be positive");
  FqRing r;
  r.F = F;
  const int f = F->f();
  r.k = (m == 1 && F->residue_field()) ? F->residue_field_ptr() : FqField::get(F->p(), f * m);
  // Image of x: a root of the residue modulus, the Conway-compatible one when possible.
  const PolyFp& mod = F->residue_modulus();
  auto is_root = [&](Elem y) {
    Elem acc = 0;
    for (int i = int(mod.size()) - 1; i >= 0; --i) acc = r.k->add(r.k->mul(acc, y), r.k->from_int(mod[i]));
    return acc == 0;
  };
  Elem x = 0;
  if (m == 1 && F->residue_field()) {
    x = r.k->gen();
  } else {
    uint64_t e = (uint64_t(r.k->q()) - 1) / (uint64_t(F->q()) - 1);
    x = r.k->pow(r.k->gen(), e);
    if (!is_root(x)) {
      for (int y = 0; y < r.k->q(); ++y)
        if (is_root(Elem(y))) {
          x = Elem(y);
          break;
        }
    }
  }
  require(is_root(x), Code::IntegrityFailure, "no embedding of F_q into F_{q^m}");
  r.x_powers.push_back(1);
  for (int j = 1; j < f; ++j) r.x_powers.push_back(r.k->mul(r.x_powers.back(), x));
  return r;
}

}  // namespace ltp
