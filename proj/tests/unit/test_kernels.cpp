#include <cstring>
#include <vector>

#include "bautin/kernels.hpp"
#include "bautin/model.hpp"
#include "bautin/rng.hpp"
#include "doctest.h"

using namespace bautin;
using namespace bautin::kernels;

namespace {

struct Batch {
  std::vector<double> conn;
  NetworkCoefficients coeffs;
  std::vector<double> state;
  std::vector<double> noise;
};

Batch make_batch(std::size_t n, std::size_t lanes, std::uint64_t seed) {
  Batch b;
  b.conn.assign(n * n, 1.0);
  for (std::size_t j = 0; j < n; ++j) b.conn[j * n + j] = 0.0;
  b.conn[1] = 0.5;
  const ModelParams p(0.3, 0.8, 0.05, 3.0, 1.35);
  b.coeffs = {n, p.omega(), p.a(), p.eta(), p.B().real(), p.B().imag(), p.C().real(), p.C().imag(),
              0.01, 0.2, b.conn.data()};
  SplitMix64 g(seed);
  b.state.resize(3 * n * lanes);
  for (auto& v : b.state) v = 2.0 * g.uniform() - 1.0;
  NormalStream ns(seed + 1);
  b.noise.resize(3 * n * lanes);
  for (auto& v : b.noise) v = ns.next();
  return b;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("scalar kernel with one lane equals the network field") {
  auto b = make_batch(3, 1, 5);
  std::vector<double> out(b.state.size());
  field_scalar(b.coeffs, b.state.data(), out.data(), 1);
  const ModelParams p(0.3, 0.8, 0.05, 3.0, 1.35);
  const CouplingSpec k(0.01, 0.2, 3, b.conn);
  const auto f = eval_field_cartesian(NetworkState(b.state), p, k);
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == f.values()[i]);
}

TEST_CASE("lanes are independent") {
  const std::size_t lanes = 4;
  auto b = make_batch(2, lanes, 11);
  std::vector<double> out(b.state.size());
  field_scalar(b.coeffs, b.state.data(), out.data(), lanes);
  for (std::size_t l = 0; l < lanes; ++l) {
    std::vector<double> one(6), one_out(6);
    for (std::size_t c = 0; c < 6; ++c) one[c] = b.state[c * lanes + l];
    field_scalar(b.coeffs, one.data(), one_out.data(), 1);
    for (std::size_t c = 0; c < 6; ++c) CHECK(one_out[c] == out[c * lanes + l]);
  }
}

TEST_CASE("AVX2 field and step are bit-identical to scalar") {
  if (!isa_available(Isa::avx2)) {
    MESSAGE("AVX2 variant unavailable; skipped");
    return;
  }
  for (std::size_t n : {1, 2, 3, 5}) {
    for (std::size_t lanes : {4, 8, 16}) {
      auto b = make_batch(n, lanes, 100 + n + lanes);
      std::vector<double> fs(b.state.size()), fv(b.state.size());
      select_field(Isa::scalar)(b.coeffs, b.state.data(), fs.data(), lanes);
      select_field(Isa::avx2)(b.coeffs, b.state.data(), fv.data(), lanes);
      CHECK(same_bits(fs, fv));

      auto ss = b.state, sv = b.state;
      std::vector<double> scratch(b.state.size());
      for (int step = 0; step < 50; ++step) {
        select_euler_step(Isa::scalar)(b.coeffs, ss.data(), b.noise.data(), 1e-5 * 0.0316, 1e-3,
                                       lanes, scratch.data());
        select_euler_step(Isa::avx2)(b.coeffs, sv.data(), b.noise.data(), 1e-5 * 0.0316, 1e-3,
                                     lanes, scratch.data());
      }
      CHECK(same_bits(ss, sv));
    }
  }
}

TEST_CASE("noise reaches only the fast components") {
  auto b = make_batch(2, 1, 3);
  auto with = b.state, without = b.state;
  std::vector<double> scratch(b.state.size());
  euler_step_scalar(b.coeffs, with.data(), b.noise.data(), 0.1, 1e-3, 1, scratch.data());
  euler_step_scalar(b.coeffs, without.data(), nullptr, 0.0, 1e-3, 1, scratch.data());
  for (std::size_t c = 0; c < 6; ++c) {
    if (c % 3 == 2) {
      CHECK(with[c] == without[c]);
    } else {
      CHECK(with[c] == doctest::Approx(without[c] + 0.1 * b.noise[c]));
    }
  }
}

TEST_CASE("dispatch reports lane widths") {
  CHECK(lane_width(Isa::scalar) == 1);
  if (isa_available(Isa::avx2)) CHECK(lane_width(Isa::avx2) == 4);
  CHECK(isa_name(Isa::scalar) == "scalar");
}
