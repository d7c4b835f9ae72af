#pragma once

#include "boltspec/spectral_field.hpp"
#include "boltspec/weights.hpp"

namespace boltspec {

/// Galerkin collision term: out[n] = sum_{l+m=n} G(l,m) f_l f_m, with the
/// sum over pairs that stay inside the mode box.
SpectralField collision_rhs(const WeightTable& G, const SpectralField& f);

/// Bilinear form Q(g,f): the loss-side argument g pairs with the m index
/// of G(l,m) (the e^{-i pi m.q/L} factor), f with l.
SpectralField collision_bilinear(const WeightTable& G, const SpectralField& g,
                                 const SpectralField& f);

}  // namespace boltspec
