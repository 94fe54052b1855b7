#pragma once

// The free operator (V = 0) diagonalizes in the Fourier basis: at phase
// theta its fiber eigenvalues are e_l(theta) = 2 sum_i cos 2 pi (theta_i + l_i/q_i)
// for l in the frequency set.

#include <cstddef>
#include <span>
#include <vector>

#include "pbands/bandedges.hpp"
#include "pbands/lattice.hpp"

namespace pbands {

double free_level(const PeriodVector& q, const Phase& theta, const FourierIndex& l);

// Gradient of free_level in theta: components -4 pi sin 2 pi (theta_i + l_i/q_i).
std::vector<double> free_gradient(const PeriodVector& q, const Phase& theta, const FourierIndex& l);

// d^2/dt^2 free_level(theta + t beta) at t = 0, i.e.
// -4 pi^2 sum_i 2 cos 2 pi (theta_i + l_i/q_i) beta_i^2. beta must be a unit
// vector (DomainError otherwise).
double second_order_coeff(const PeriodVector& q, const Phase& theta, const FourierIndex& l,
                          std::span<const double> beta);

// All Q free levels at theta, largest first.
std::vector<double> free_levels_sorted_desc(const PeriodVector& q, const Phase& theta);

// Full-circle phases x in [0,1)^d with sum 2cos 2 pi x_i = energy,
// sum sin 2 pi x_i = 0 and sum sin^2 2 pi x_i > 0. Requires |energy| < 2d.
std::vector<double> construct_theta_for_energy(std::size_t dim, double energy);

enum class WitnessOutcome { interior, touching_at_zero, not_found };

struct WitnessResult {
  WitnessOutcome outcome = WitnessOutcome::not_found;
  std::size_t band = 0;   // 1-based, largest band first; 0 when none
  Phase theta_below;      // attains band_min < energy
  Phase theta_above;      // attains band_max > energy
  double margin = 0.0;    // min(max F^k - E, E - min F^k) from attained values
  double band_min = 0.0;
  double band_max = 0.0;
};

// Smallest margin accepted as a certificate; covers eigensolver rounding.
inline constexpr double kWitnessFloor = 1e-10;

// Certifies min F_0^k < energy < max F_0^k for some band k of the free
// operator. Both edges used are attained eigenvalues, so the certificate
// needs no slack. Energy zero with every period even yields
// touching_at_zero when no band holds zero strictly inside.
WitnessResult interior_witness(const PeriodVector& q, double energy,
                               const GridSpec& grid);
WitnessResult interior_witness(const PeriodVector& q, double energy);

const char* to_string(WitnessOutcome outcome) noexcept;

}  // namespace pbands
