#pragma once

#include <random>
#include <string>

// Words of 1..6 letters over a b g d, each optionally starred and followed by a projection.
inline std::string random_word(std::mt19937& rng) {
  const char* letters = "abgd";
  std::uniform_int_distribution<int> len(1, 6), letter(0, 3), coin(0, 3), ex(-2, 2);
  std::string w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    w += letters[letter(rng)];
    if (coin(rng) < 2) w += '\'';
    if (coin(rng) == 0) w += "P(" + std::to_string(ex(rng)) + "," + std::to_string(ex(rng)) + ")";
  }
  return w;
}
