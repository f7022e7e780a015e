#include "socnewton/rng.hpp"

#include <catch2/catch.hpp>

#include "socnewton/errors.hpp"

using namespace socnewton;

TEST_CASE("splitmix64 matches the reference sequence for seed 0") {
  rng::SplitMix64 sm{0};
  CHECK(sm.next() == 0xE220A8397B1DCDAFull);
  CHECK(sm.next() == 0x6E789E6AA1B965F4ull);
  CHECK(sm.next() == 0x06C45D188009454Full);
}

TEST_CASE("derive_seed is the splitmix finalizer of parent + index*gamma") {
  CHECK(rng::derive_seed(0, 0) == 0);
  CHECK(rng::derive_seed(42, 7) == 0x37E9671C45376D5Dull);
  CHECK(rng::derive_seed(42, 7) != rng::derive_seed(42, 8));
  CHECK(rng::derive_seed(42, 7) != rng::derive_seed(43, 7));
}

TEST_CASE("xoshiro256++ produces a fixed, platform-independent stream") {
  rng::Xoshiro256pp g(42);
  CHECK(g.next() == 0xD0764D4F4476689Full);
  CHECK(g.next() == 0x519E4174576F3791ull);
  CHECK(g.next() == 0xFBE07CFB0C24ED8Cull);
  CHECK(g.next() == 0xB37D9F600CD835B8ull);
  CHECK(g.next() == 0xCB231C3874846A73ull);
}

TEST_CASE("uniform draws reproduce exactly and respect their ranges") {
  rng::Xoshiro256pp g(42);
  CHECK(g.uniform01() == 0.8143051451229099);
  CHECK(g.uniform01() == 0.3188210400616611);
  CHECK(g.uniform01() == 0.9838941681774888);

  rng::Xoshiro256pp h(7);
  for (int i = 0; i < 1000; ++i) {
    const double u = h.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = h.uniform01_open();
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    const double w = h.uniform(-3.0, 5.0);
    CHECK(w >= -3.0);
    CHECK(w < 5.0);
  }
}

TEST_CASE("uniform rejects an empty range") {
  rng::Xoshiro256pp g(1);
  CHECK_THROWS_AS(g.uniform(1.0, 1.0), InvalidInputError);
  CHECK_THROWS_AS(g.uniform(2.0, -2.0), InvalidInputError);
}

TEST_CASE("streams for different sites are decoupled") {
  rng::Xoshiro256pp a = rng::make_stream(99, rng::Site::kMatrixEntries);
  rng::Xoshiro256pp b = rng::make_stream(99, rng::Site::kScale);
  rng::Xoshiro256pp a2 = rng::make_stream(99, rng::Site::kMatrixEntries);
  CHECK(a.next() != b.next());
  rng::Xoshiro256pp a3 = rng::make_stream(99, rng::Site::kMatrixEntries);
  CHECK(a2.next() == a3.next());
}
