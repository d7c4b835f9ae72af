#include "boltspec/collision.hpp"

#include <stdexcept>

namespace boltspec {

SpectralField collision_bilinear(const WeightTable& G, const SpectralField& g,
                                 const SpectralField& f) {
  const Domain& dom = G.domain;
  if (!dom.same_as(g.domain) || !dom.same_as(f.domain))
    throw std::invalid_argument("collision: domain mismatch");
  const int N = dom.N;
  const int side = 2 * N + 1;
  const int lat = side * side;
  SpectralField out(dom, g.real_valued && f.real_valued);

  // out[l+m] += G(l,m) f_l g_m with both l and l+m in the box.
  for (int l1 = -N; l1 <= N; ++l1) {
    const int m1lo = std::max(-N, -N - l1), m1hi = std::min(N, N - l1);
    for (int l2 = -N; l2 <= N; ++l2) {
      const int lidx = (l1 + N) * side + (l2 + N);
      const cplx fl = f.coeffs[lidx];
      if (fl == cplx(0.0)) continue;
      const cplx* Grow = &G.entries[static_cast<size_t>(lidx) * lat];
      const int m2lo = std::max(-N, -N - l2), m2hi = std::min(N, N - l2);
      for (int m1 = m1lo; m1 <= m1hi; ++m1) {
        const int nrow = (l1 + m1 + N) * side + l2 + N;
        const int mrow = (m1 + N) * side + N;
        const cplx* gp = &g.coeffs[mrow + m2lo];
        const cplx* Gp = &Grow[mrow + m2lo];
        cplx* op = &out.coeffs[nrow + m2lo];
        for (int m2 = m2lo; m2 <= m2hi; ++m2, ++gp, ++Gp, ++op)
          *op += *Gp * fl * *gp;
      }
    }
  }
  return out;
}

SpectralField collision_rhs(const WeightTable& G, const SpectralField& f) {
  return collision_bilinear(G, f, f);
}

}  // namespace boltspec
