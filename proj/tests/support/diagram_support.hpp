#pragma once

#include <string>

#include "dualseq/phantom.hpp"
#include "support/generators.hpp"

namespace dualseq::testing {

/// 2-3 objects, a few random generators and one declared composite per
/// composable pair found.
inline Diagram random_diagram(Rng& rng, const Field& f) {
  Diagram d;
  const int nobj = rng.uniform(2, 3);
  SeqShape shape{-2, 2, 2, 0.3};
  for (int k = 0; k < nobj; ++k) d.objects.emplace("X" + std::to_string(k), random_seq(rng, f, shape));
  const int ngen = rng.uniform(2, 4);
  for (int k = 0; k < ngen; ++k) {
    std::string s = "X" + std::to_string(rng.uniform(0, nobj - 1)), t = "X" + std::to_string(rng.uniform(0, nobj - 1));
    d.generators["g" + std::to_string(k)] = {s, t, random_hat(rng, d.objects.at(s), d.objects.at(t))};
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& [a, ga] : d.generators)
    for (const auto& [b, gb] : d.generators)
      if (ga.source == gb.target) pairs.emplace_back(a, b);
  for (std::size_t k = 0; k < pairs.size() && k < 2; ++k) {
    auto [a, b] = pairs[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(pairs.size()) - 1))];
    std::string name = "c" + std::to_string(k);
    const auto& ga = d.generators.at(a);
    const auto& gb = d.generators.at(b);
    d.generators[name] = {gb.source, ga.target, compose_hat(ga.morphism, gb.morphism)};
    d.relations.push_back({{a, b}, {name}});
  }
  return d;
}

inline InnerData random_theta(Rng& rng, const Diagram& d) {
  InnerData theta;
  for (const auto& [name, v] : d.objects) theta[name] = random_graded(rng, v, v, 0);
  return theta;
}

}  // namespace dualseq::testing
