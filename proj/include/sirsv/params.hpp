#ifndef SIRSV_PARAMS_HPP
#define SIRSV_PARAMS_HPP

#include "sirsv/errors.hpp"

namespace sirsv {

// Rate tuple of the SIRS process with vaccination. All rates are per unit
// time: beta acts per S-I edge, delta on each infected node, gamma on each
// recovered node (loss of immunity), sigma on each susceptible node
// (vaccination straight into R). epsilon rescales infection across partition
// cells and is 1 unless a community structure is in play.
struct EpidemicParams {
  double beta = 0.0;
  double delta = 0.0;
  double gamma = 0.0;
  double sigma = 0.0;
  double epsilon = 1.0;

  // Effective infection rate tau = beta/delta.
  double tau() const { return beta / delta; }

  void validate() const {
    if (!(beta > 0.0)) throw ConfigError("EpidemicParams: beta must be > 0");
    if (!(delta > 0.0)) throw ConfigError("EpidemicParams: delta must be > 0");
    if (!(gamma > 0.0)) throw ConfigError("EpidemicParams: gamma must be > 0");
    if (!(sigma >= 0.0)) throw ConfigError("EpidemicParams: sigma must be >= 0");
    if (!(epsilon > 0.0)) throw ConfigError("EpidemicParams: epsilon must be > 0");
  }
};

}  // namespace sirsv

#endif
