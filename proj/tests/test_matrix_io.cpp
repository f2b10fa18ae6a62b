#include <sstream>

#include <gtest/gtest.h>

#include "phaseop/matrix_io.hpp"

using namespace phaseop;

TEST(FormatDouble, SeventeenDigitsLocaleFree) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(format_double(-1.5e-300), "-1.5000000000000001e-300");
  EXPECT_EQ(format_double(0.0), "0");
}

TEST(MatrixIo, RoundTripExact) {
  FockOperator m = ladder_matrix(LadderKind::annihilation, 4) + cplx(0.1, -1.0 / 3.0) * number_matrix(4);
  m(2, 0) = cplx(1e-310, 6.02e23);
  std::istringstream in(format_matrix(m));
  const FockOperator back = read_matrix(in);
  ASSERT_EQ(back.dim(), 4u);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(back(n, k), m(n, k));
}

TEST(MatrixIo, Header) {
  const std::string s = format_matrix(FockOperator::identity(2));
  EXPECT_EQ(s.rfind("phaseop-matrix v1 2 2\n", 0), 0u);
  EXPECT_EQ(s, "phaseop-matrix v1 2 2\n1 0\n0 0\n0 0\n1 0\n");
}

TEST(MatrixIo, RejectsMalformed) {
  std::istringstream bad_tag("matrix v1 2 2\n");
  EXPECT_THROW(read_matrix(bad_tag), std::runtime_error);
  std::istringstream short_body("phaseop-matrix v1 2 2\n1 0\n");
  EXPECT_THROW(read_matrix(short_body), std::runtime_error);
  std::istringstream not_square("phaseop-matrix v1 2 3\n");
  EXPECT_THROW(read_matrix(not_square), std::runtime_error);
}
