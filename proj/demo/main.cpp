#include <iostream>
#include <random>

#include "jip/hyperelliptic.hpp"
#include "jip/sigma_calculus.hpp"

using namespace jip;

int main() {
  // symbolic: the inversion system of the trigonal genus 3 curve
  auto fam34 = make_family(3, 4);
  std::cout << emit_system(build_inversion_system(fam34), EmitFormat::latex) << "\n";

  // numeric: recover a divisor on a random (3,4) curve from its R-functions
  std::mt19937_64 rng(2024);
  auto num34 = random_numeric_family(3, 4, rng);
  auto D = random_divisor(num34, rng);
  auto sys = rfunctions_from_divisor(num34, D, rng);
  auto back = solve_divisor(sys);
  std::cout << "(3,4) round trip error " << divisor_distance(D, back) << "\n";

  // genus 2: x1+x2 = P11, x1*x2 = -P13 through theta functions
  auto fam25 = random_real_branch_family(2, rng);
  auto J = make_jacobian(fam25);
  auto D25 = random_divisor(fam25, rng);
  for (const auto& c : verify_inversion(J, D25)) std::cout << c.identity << "  err " << c.abs_err << "\n";
  return 0;
}
