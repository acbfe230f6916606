#pragma once

// Reference values produced by tests/oracle/fixtures.py (sympy / mpmath).
// Regenerate with `python3 tests/oracle/fixtures.py` if a definition changes.

#include <array>
#include <cstddef>

namespace fixtures {

// Heisenberg, identity frame, nonzero Gamma^l_ij as {l, i, j, value}.
struct GammaEntry {
  int l, i, j;
  double value;
};
inline constexpr std::array<GammaEntry, 6> kHeisenbergGamma = {{
    {0, 1, 2, 0.5},
    {0, 2, 1, 0.5},
    {1, 0, 2, -0.5},
    {1, 2, 0, -0.5},
    {2, 0, 1, 0.5},
    {2, 1, 0, 0.5},
}};

inline constexpr double kHeisenbergExpS111 = -0.32715015237608375081;
inline constexpr double kSu2InfiniteS = 0.0;

template <std::size_t N>
struct BerwaldCase {
  const char* space;
  bool exponential;
  std::array<double, N> y;
  double S;
  std::array<std::array<double, N>, N> E;
};

inline constexpr BerwaldCase<2> kSolvableExp = {
    "solvable2", true, {1.0, 0.3}, 0.48347646124339892282,
    {{{-0.044043881890791370906, 0.14681293963597123635},
      {0.14681293963597123635, -0.48937646545323745451}}}};

inline constexpr BerwaldCase<2> kSolvableInf = {
    "solvable2", false, {1.0, 0.3}, 2.9041190739041932340,
    {{{0.10559237811717220900, -0.35197459372390736334},
      {-0.35197459372390736334, 1.1732486457463578778}}}};

inline constexpr BerwaldCase<3> kHeisenbergExp = {
    "heisenberg3", true, {0.2, 1.0, -0.4}, 0.27917755319586310127,
    {{{-0.072180947943906373489, 0.078675804752906338333, 0.16059903791031265909},
      {0.078675804752906338333, -0.072602688062925229855, -0.14216881778085990547},
      {0.16059903791031265909, -0.14216881778085990547, -0.27512252549699343413}}}};

// Close to the Delta = 0 locus (Delta ~ -0.0098); 60-digit Hessian of S.
inline constexpr BerwaldCase<3> kHeisenbergInfNearPole = {
    "heisenberg3", false, {-0.700304, -0.211886, -0.540647}, 0.0,
    {{{4613015119.8455573393, -2042507834.8080046849, -5174788957.3089174754},
      {-2042507834.8080046849, 910806418.46358387082, 2288719400.9488815822},
      {-5174788957.3089174754, 2288719400.9488815822, 5805965457.9971948808}}}};

// Holmes-Thompson, exponential, n = 2, b = 0.3.
inline constexpr double kExpHt_b03_n2 = 1.04498976047660122219591117993;
// Busemann-Hausdorff, exponential, n = 3, b = 0.5.
inline constexpr double kExpBh_b05_n3 = 0.704463660892836877094346647831;

}  // namespace fixtures
