// spincouple: exact arithmetic for spin-orbit coupling coefficients
// SPDX-License-Identifier: MIT
#include <cstdio>

int main() {
  std::puts("spincouple: command line interface not built yet");
  return 2;
}
