#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "contagion/network.hpp"

namespace contagion {

namespace gen {

// Single cycle: bank i owes bank i+1 (and bank n owes bank 1) the amount d.
struct Wheel {
  std::size_t n = 3;
  Amount d = 1;
  Amount p = 0;
};

// The center is the last bank. p lists the peripherals first, then the center.
struct Star {
  std::size_t n = 4;
  Amount d_in = 2;
  Amount d_out = 1;
  std::vector<Amount> p;
};

// Core banks come first, followed by the n_p peripherals of core 1, then those of core 2, ...
struct CorePeriphery {
  std::size_t n_c = 2;
  std::size_t n_p = 1;
  Amount d_core = 1;
  Amount d_in = 2;
  Amount d_out = 1;
  std::vector<Amount> p_core;
  Amount p_p = 0;
};

// Bank i owes bank i+1 d_hi and bank i+1 owes bank i d_lo; p_1 = p_n = 0, all others d_lo.
struct CycleChain {
  std::size_t n = 4;
  Amount d_hi = 2;
  Amount d_lo = 1;
};

// Integer draws are divided by `scale`. Each ordered pair gets a debt with probability
// density_num / density_den. With `weakly_balanced`, p_i is topped up to D_i^L - D_i^A.
struct Random {
  std::size_t n = 5;
  std::uint64_t density_num = 1;
  std::uint64_t density_den = 2;
  long amount_lo = 1;
  long amount_hi = 4;
  long p_lo = 0;
  long p_hi = 4;
  long ext_lo = 0;
  long ext_hi = 0;
  long scale = 1;
  bool weakly_balanced = false;
  std::uint64_t seed = 1;
};

// Bilateral star built from a multiset of positive integers: peripheral i owes a_i to the
// center and holds p_i = a_i - a_i/M; the center owes each peripheral a_i/2 and holds nothing.
struct FromPartition {
  std::vector<long> multiset;
  long m = 0;
};

}  // namespace gen

using GeneratorSpec = std::variant<gen::Wheel, gen::Star, gen::CorePeriphery, gen::CycleChain, gen::Random,
                                   gen::FromPartition>;

FinancialNetwork generate(const GeneratorSpec& spec, const CostSpec& costs = CostSpec::full());

}  // namespace contagion
