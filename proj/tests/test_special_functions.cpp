#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "forecastability/error.hpp"
#include "forecastability/special_functions.hpp"

namespace fcast {
namespace {

TEST(Digamma, ReferenceValues) {
  // High-precision references.
  struct Case {
    double x;
    double psi;
  };
  const Case cases[] = {
      {0.001, -1000.5755719318102797}, {0.5, -1.9635100260214234794},
      {1.0, -0.57721566490153286061},  {2.0, 0.42278433509846713939},
      {5.9, 1.6878194259079581818},    {6.0, 1.7061176684318004727},
      {6.5, 1.7929113303999329419},    {10.0, 2.2517525890667211076},
      {100.0, 4.6001618527380874002},  {12345.6, 9.4210145024653966236},
  };
  for (const auto& c : cases) EXPECT_NEAR(digamma(c.x), c.psi, 1e-10) << "x=" << c.x;
}

TEST(Digamma, AsymptoticLeadingTerms) {
  EXPECT_NEAR(digamma(100.0), std::log(100.0) - 1.0 / 200.0, 1e-5);
}

TEST(Digamma, Recurrence) {
  for (double x = 0.05; x < 30.0; x += 0.37) {
    EXPECT_NEAR(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-10) << "x=" << x;
  }
}

TEST(Digamma, RejectsNonPositive) {
  EXPECT_THROW((void)digamma(0.0), DomainError);
  EXPECT_THROW((void)digamma(-1.5), DomainError);
  EXPECT_THROW((void)digamma(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

}  // namespace
}  // namespace fcast
