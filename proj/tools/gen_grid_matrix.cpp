// gen_grid_matrix: 9-point stencil (8 on the diagonal, -1 to each of the eight
// neighbours) on an m x m grid, written as symmetric MatrixMarket.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gen_grid_matrix M OUT.mtx\n";
    return 1;
  }
  const int m = std::stoi(argv[1]);
  if (m < 1) {
    std::cerr << "error: grid size must be positive\n";
    return 1;
  }
  std::ofstream out(argv[2]);
  if (!out) {
    std::cerr << "error: cannot write " << argv[2] << '\n';
    return 1;
  }
  const int n = m * m;
  long long lower = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const int di = std::abs(i / m - j / m), dj = std::abs(i % m - j % m);
      if (di <= 1 && dj <= 1) ++lower;
    }
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << n << ' ' << n << ' ' << lower << '\n';
  for (int j = 0; j < n; ++j)
    for (int i = j; i < n; ++i) {
      const int di = std::abs(i / m - j / m), dj = std::abs(i % m - j % m);
      if (di > 1 || dj > 1) continue;
      out << i + 1 << ' ' << j + 1 << ' ' << (i == j ? 8 : -1) << '\n';
    }
  return 0;
}
