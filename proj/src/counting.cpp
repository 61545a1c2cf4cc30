#include "sfwm/counting.hpp"

#include <algorithm>
#include <cmath>

#include "sfwm/errors.hpp"

namespace sfwm {

void CountRecord::validate() const {
  if (!(duration_s > 0.0)) throw ConfigError("count duration must be > 0");
  if (nab > std::min(na, nb) || nac > std::min(na, nc) || nbc > std::min(nb, nc)) {
    throw ConfigError("two-fold counts cannot exceed the singles of their detectors");
  }
  if (nabc > std::min({nab, nac, nbc})) throw ConfigError("three-fold counts cannot exceed any two-fold count");
}

void RateRecord::validate() const {
  if (!(signal_rate >= 0.0 && idler_rate >= 0.0 && coincidence_rate >= 0.0)) {
    throw ConfigError("rates must be >= 0");
  }
  if (coincidence_rate > std::min(signal_rate, idler_rate)) {
    throw ConfigError("coincidence rate cannot exceed either singles rate");
  }
  if (!(duration_s > 0.0)) throw ConfigError("duration must be > 0");
}

Measurement g2_conditional(const CountRecord& rec) {
  rec.validate();
  if (rec.nab == 0 || rec.nac == 0) throw DomainError("g2 undefined: N_AB and N_AC must be > 0");
  const double na = static_cast<double>(rec.na);
  const double nab = static_cast<double>(rec.nab);
  const double nac = static_cast<double>(rec.nac);
  const double nabc = static_cast<double>(rec.nabc);
  Measurement m;
  m.value = nabc * na / (nab * nac);
  if (rec.nabc == 0) {
    // one count above the observation bounds the value from above
    m.uncertainty = na / (nab * nac);
    m.one_sided = true;
    return m;
  }
  m.uncertainty = m.value * std::sqrt(1.0 / nabc + 1.0 / na + 1.0 / nab + 1.0 / nac);
  return m;
}

HeraldingEfficiencies heralding_efficiencies(const RateRecord& rates) {
  rates.validate();
  if (!(rates.signal_rate > 0.0) || !(rates.idler_rate > 0.0)) {
    throw DomainError("heralding efficiency needs nonzero singles rates");
  }
  const double ncc = rates.coincidence_rate * rates.duration_s;
  auto ratio = [&](double singles_rate) {
    Measurement m;
    m.value = rates.coincidence_rate / singles_rate;
    const double nsingles = singles_rate * rates.duration_s;
    if (ncc > 0.0) {
      m.uncertainty = m.value * std::sqrt(1.0 / ncc + 1.0 / nsingles);
    } else {
      m.uncertainty = 1.0 / nsingles;
      m.one_sided = true;
    }
    return m;
  };
  return {ratio(rates.idler_rate), ratio(rates.signal_rate)};
}

double brightness(const RateRecord& rates) {
  rates.validate();
  if (!(rates.pump_power_W > 0.0)) throw DomainError("brightness needs a pump power > 0");
  return rates.coincidence_rate / (rates.pump_power_W * 1e3);
}

}  // namespace sfwm
