#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fedslice/qos.hpp"

using namespace fedslice;

TEST_CASE("additive composition sums segments") {
  CHECK(end_to_end_latency<double>({0}).value() == 0.0);
  CHECK(end_to_end_latency<double>({2, 3, 5}).value() == 10.0);
  CHECK(end_to_end_latency<Qty>({Qty(1, 2), Qty(1, 3)}).value() == Qty(5, 6));
}

TEST_CASE("additive composition rejects empty and negative input") {
  CHECK(end_to_end_latency<double>({}).code() == Errc::no_segments);
  CHECK(end_to_end_latency<double>({1, -2}).code() == Errc::invalid_value);
}

TEST_CASE("multiplicative composition basics") {
  CHECK(end_to_end_error_rate({0, 0}).value() == 0.0);
  CHECK(end_to_end_error_rate({0.1, 0.1}).value() == Catch::Approx(0.19).margin(1e-15));
  // Absorbing case: a certain failure dominates.
  for (double x : {0.0, 0.3, 1.0}) CHECK(end_to_end_error_rate({1.0, x}).value() == 1.0);
  CHECK(end_to_end_error_rate({0.5, 1.5}).code() == Errc::invalid_probability);
}

TEST_CASE("composition properties against independent recomputation") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  std::uniform_real_distribution<double> ms(0.0, 50.0);
  std::uniform_int_distribution<int> len(1, 8);
  for (int i = 0; i < 10000; ++i) {
    int n = len(rng);
    std::vector<double> lat, err;
    for (int j = 0; j < n; ++j) {
      lat.push_back(ms(rng));
      err.push_back(prob(rng));
    }
    // Independent oracles: reverse-order accumulation.
    double lat_ref = 0.0;
    for (int j = n - 1; j >= 0; --j) lat_ref += lat[j];
    double surv_ref = 1.0;
    for (int j = n - 1; j >= 0; --j) surv_ref *= 1.0 - err[j];
    REQUIRE(std::abs(end_to_end_latency(lat).value() - lat_ref) <= 1e-12);
    REQUIRE(std::abs(end_to_end_error_rate(err).value() - (1.0 - surv_ref)) <= 1e-12);

    // Commutative under permutation.
    std::vector<double> shuffled = err;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    REQUIRE(std::abs(end_to_end_error_rate(err).value() - end_to_end_error_rate(shuffled).value()) <= 1e-12);

    // Monotone nondecreasing in each component.
    int k = static_cast<int>(rng() % n);
    std::vector<double> bumped = err;
    bumped[k] = std::min(1.0, bumped[k] + 0.05);
    REQUIRE(end_to_end_error_rate(bumped).value() >= end_to_end_error_rate(err).value() - 1e-12);
  }
}

TEST_CASE("equal error share inverts composition") {
  for (int n : {1, 2, 5}) {
    double share = equal_error_share(0.2, n);
    std::vector<double> segs(n, share);
    CHECK(end_to_end_error_rate(segs).value() == Catch::Approx(0.2).margin(1e-12));
  }
}
