// SPDX-License-Identifier: MIT
#include <cstdio>

int main() {
  std::puts("emte: command-line interface under construction");
  return 2;
}
