#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "dsqg/checkpoint.hpp"
#include "dsqg/error.hpp"
#include "unit/test_support.hpp"

using namespace dsqg;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dsqg_test_" + name)).string();
}

SolverState sample_state() {
  const DomainSpec d{2.0, 3.0, 12, 9};
  return {0.375, test::random_coeffs(d, 7, 1.0, 12)};
}

}  // namespace

TEST_CASE("binary checkpoint round trip is bit exact") {
  const auto s = sample_state();
  const auto path = temp_path("ckpt.bin");
  write_checkpoint(path, s, CheckpointFormat::Binary);
  const auto r = read_checkpoint(path);
  CHECK(r.t == s.t);
  CHECK(r.theta.domain == s.theta.domain);
  CHECK(r.theta.coeffs == s.theta.coeffs);
  CHECK(std::filesystem::file_size(path) == 8 + 8 + 8 + 4 + 4 + 8 + 12 * 9 * 8);
  std::remove(path.c_str());
}

TEST_CASE("binary layout: magic, header, j-major coefficients") {
  const auto s = sample_state();
  const auto path = temp_path("layout.bin");
  write_checkpoint(path, s, CheckpointFormat::Binary);
  std::ifstream is(path, std::ios::binary);
  char magic[8];
  is.read(magic, 8);
  CHECK(std::memcmp(magic, "SQGCKPT1", 8) == 0);
  double L1, L2, t;
  std::int32_t N1, N2;
  is.read(reinterpret_cast<char*>(&L1), 8);
  is.read(reinterpret_cast<char*>(&L2), 8);
  is.read(reinterpret_cast<char*>(&N1), 4);
  is.read(reinterpret_cast<char*>(&N2), 4);
  is.read(reinterpret_cast<char*>(&t), 8);
  CHECK(L1 == 2.0);
  CHECK(L2 == 3.0);
  CHECK(N1 == 12);
  CHECK(N2 == 9);
  CHECK(t == 0.375);
  double c[2];
  is.read(reinterpret_cast<char*>(c), 16);
  CHECK(c[0] == s.theta(1, 1));
  CHECK(c[1] == s.theta(1, 2));
  std::remove(path.c_str());
}

TEST_CASE("csv checkpoint round trip") {
  const auto s = sample_state();
  const auto path = temp_path("ckpt.csv");
  write_checkpoint(path, s, CheckpointFormat::Csv);
  const auto r = read_checkpoint(path);
  CHECK(r.t == s.t);
  CHECK(r.theta.domain == s.theta.domain);
  CHECK(r.theta.coeffs == s.theta.coeffs);
  std::remove(path.c_str());
}

TEST_CASE("malformed checkpoints are rejected") {
  const auto path = temp_path("bad.bin");
  {
    std::ofstream os(path, std::ios::binary);
    os << "SQGCKPT1abc";
  }
  CHECK_THROWS_AS(read_checkpoint(path), Error);
  CHECK_THROWS_AS(read_checkpoint(temp_path("missing.bin")), Error);
  CHECK_THROWS_AS(parse_checkpoint_format("hdf5"), ConfigError);
  CHECK(parse_checkpoint_format("csv") == CheckpointFormat::Csv);
  write_checkpoint(path, sample_state(), CheckpointFormat::Binary);
  {
    std::ofstream os(path, std::ios::binary | std::ios::app);
    os << 'x';
  }
  CHECK_THROWS_AS(read_checkpoint(path), Error);
  std::remove(path.c_str());
}
