// A few products in the truncated graded quotient of the augmentation ideal.

#include <iostream>

#include "elsos/augmentation.hpp"

int main() {
  using namespace elsos;
  const int N = 4;
  std::cout << "yb xb          = " << graded_word(N, "yx").str() << '\n';
  std::cout << "(yb yb)(xb xb) = " << graded_mul(graded_word(N, "yy"), graded_word(N, "xx")).str() << '\n';
  std::cout << "X              = " << to_graded(heis::X(), N).str() << '\n';
  std::cout << "box            = " << box_element(5).str() << '\n';
  for (int n = 0; n <= 6; ++n)
    std::cout << "dim degree " << n << " = " << graded_dimension(n) << '\n';
}
