#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace oracles;

TEST_CASE("moebius function small values") {
  CHECK(moebius(1) == 1);
  CHECK(moebius(2) == -1);
  CHECK(moebius(4) == 0);
  CHECK(moebius(6) == 1);
  CHECK(moebius(12) == 0);
  CHECK(moebius(30) == -1);
}

TEST_CASE("necklace counts on two letters") {
  // 2, 1, 2, 3, 6, 9, 18, 30 for degrees 1..8
  long expect[] = {2, 1, 2, 3, 6, 9, 18, 30};
  for (int m = 1; m <= 8; ++m) CHECK(witt_dimension(2, m) == expect[m - 1]);
}

TEST_CASE("necklace counts on three letters") {
  long expect[] = {3, 3, 8, 18, 48, 116};
  for (int m = 1; m <= 6; ++m) CHECK(witt_dimension(3, m) == expect[m - 1]);
}

TEST_CASE("radical slice dimensions at small signatures") {
  // n=1, q=2: one weight-2 variable
  CHECK(radical_dim(1, 2, 0) == 1);
  CHECK(radical_dim(1, 2, 2) == 1);
  CHECK(radical_dim(1, 2, 4) == 1);
  CHECK(radical_dim(1, 2, 3) == 0);
  // n=2, q=2: three weight-2 variables
  CHECK(radical_dim(2, 2, 2) == 3);
  CHECK(radical_dim(2, 2, 4) == 6);
  CHECK(radical_dim(2, 2, 6) == 10);
  // n=2, q=3: three weight-2 and eight weight-3 variables
  CHECK(radical_dim(2, 3, 2) == 3);
  CHECK(radical_dim(2, 3, 3) == 8);
  CHECK(radical_dim(2, 3, 5) == 3 * 8);
  CHECK(radical_dim(2, 3, 4) == 6);
  CHECK(radical_dim(2, 3, 6) == 10 + ncproj::binom(9, 2).convert_to<long>());
}

TEST_CASE("exterior dimensions") {
  CHECK(exterior_dim(3, 0) == 1);
  CHECK(exterior_dim(3, 2) == 6);
  CHECK(exterior_dim(3, 4) == 1);
  CHECK(exterior_dim(5, 3) == 20);
  CHECK(exterior_dim(2, 4) == 0);
}
