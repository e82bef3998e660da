// Count the triangulations of a small random set and audit its 3-vint charges.
#include <iostream>

#include "trichor/trichor.hpp"

int main() {
  using namespace trichor;
  const auto s = augment(gen_random(6, 7));

  const auto r = enumerate_all(s);
  std::cout << "triangulations: " << r.count << '\n';
  std::cout << "vhat3: " << to_mixed(vhat(r, 3)) << '\n';

  const auto rep = audit(s);
  std::cout << "3-vints charged: " << rep.three_vints << '\n';
  std::cout << "max charge: " << to_mixed(rep.max_charge) << '\n';
  std::cout << "charge conserved: " << (rep.conserved() ? "yes" : "no") << '\n';
  return rep.ok() ? 0 : 1;
}
