// Walks through the sl(2,R) and SU(2) fibers and the A(1,2) orbit.
#include "flagorbit/symplectic.hpp"
#include "flagorbit/toy.hpp"

#include <cstdio>

using namespace flagorbit;

int main() {
  std::printf("sl(2,R): fiber at t meets y^2 - z^2 = 1, y > 0\n");
  std::printf("%10s %12s %12s %12s\n", "t/pi", "r", "y", "z");
  for (double s : linspace(-0.5, 0.5, 9)) {
    auto m = sl2_fiber_meets_hyperbola(s * kPi);
    if (m) std::printf("%10.4f %12.6f %12.6f %12.6f\n", s, m->r, m->point.y, m->point.z);
    else std::printf("%10.4f %12s\n", s, "none");
  }

  FlagDatum fd = make_flag_datum(FlagParams::a(1, 1));
  CanonicalDecomposition cd = canonical_decomposition(fd);
  std::printf("\nSU(2): |alpha|^2 against the fiber verdict\n");
  for (double a2 : {1.0, 0.9, 0.75, 0.6, 0.5, 0.3, 0.0}) {
    cplx a = std::sqrt(a2), b = std::polar(std::sqrt(1 - a2), 0.7);
    FiberVerdict v = nonintersecting_fiber_condition(cd, fd, su2::element(a, b));
    std::printf("%6.2f  %-16s %s\n", a2, to_string(v.kind).c_str(), v.reason.c_str());
  }

  FlagDatum a12 = make_flag_datum(FlagParams::a(1, 2));
  CanonicalDecomposition c12 = canonical_decomposition(a12);
  CompactConjugation tau(a12.weyl);
  KksWitness w = kks_nonlagrangian_witness(a12, tau);
  std::printf("\nA(1,2): dim u = %d, dim m = %d, KKS witness at %s = %.6f, omega = %.1e\n", c12.u.dim(), c12.m.dim(),
              w.root.label().c_str(), w.value, w.omega_value);
  return 0;
}
