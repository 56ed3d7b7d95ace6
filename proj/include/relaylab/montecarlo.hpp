#pragma once

#include "relaylab/hpa.hpp"
#include "relaylab/metrics.hpp"
#include "relaylab/philox.hpp"
#include "relaylab/relaying.hpp"
#include "relaylab/system_config.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace relaylab::montecarlo {

struct Estimate {
    double mean = 0.0;
    double half_width_95 = 0.0;
    std::uint64_t samples_used = 0;
};

struct McPoint {
    Estimate outage, ber, capacity;
};

// Trials are processed in fixed chunks; each trial owns a counter-based substream and chunk
// sums are reduced in chunk order, so results do not depend on the worker count.
inline constexpr std::uint64_t kChunk = 16384;

// Fading shape shared by every lane of a run.
struct LinkShape {
    int n_relays = 1;
    int rank = 1;
    double rho1 = 1.0, rho2 = 1.0;
    double gamma2_ratio = 1.0;
};

// One evaluation of the shared trial draws: scheme, SNR point, amplifier, threshold.
struct Lane {
    relaying::Scheme scheme = relaying::Scheme::VGII;
    double snr_db = 0.0;
    double gamma_th = 1.0;  // linear
    hpa::HpaModel hpa = hpa::Ideal{};
    double hpa_input_power = 1.0;
    metrics::ModulationParams modulation = metrics::ModulationParams::bpsk();
};

std::vector<McPoint> simulate(const LinkShape& shape, const std::vector<Lane>& lanes, const McConfig& mc);

// Index whose bottleneck b[i] has ascending rank `rank`, ties by index. Same rule as ors_select.
int rank_index(const std::vector<double>& b, int rank);

LinkShape shape_of(const SystemConfig& sys);
Lane lane_of(const SystemConfig& sys, double snr_db);

Estimate estimate_outage(const SystemConfig& sys, const McConfig& mc, double snr_db);
Estimate estimate_ber(const SystemConfig& sys, const McConfig& mc, double snr_db);
Estimate estimate_capacity(const SystemConfig& sys, const McConfig& mc, double snr_db);

// Sample mean of f over mc.samples trials with the same chunking and seeding.
Estimate estimate_mean(const McConfig& mc, const std::function<double(TrialStream&)>& f);

// Amplifier response at drive s times the nominal input power: (|delta|, sigma_tau^2 / input power).
// Tabulated on a log grid of s; exact values outside it.
class DriveTable {
public:
    DriveTable(const hpa::HpaModel& model, double sigma_sq);
    std::pair<double, double> at(double s) const;
    double delta0() const { return delta0_; }

private:
    static constexpr double kLo = -9.0, kHi = 8.0, kPerUnit = 64.0;  // ln s
    hpa::HpaModel model_;
    double sigma_sq_;
    bool ideal_;
    double delta0_ = 1.0;
    std::vector<double> delta_, rel_;
};

// End-to-end SNDR with the amplifier evaluated at the drive the realized hop-1 SNR produces.
// c_gain is the hop-1 SNR the gain was set from (mean, outdated or current).
double sndr_full(double g1, double g2, double c_gain, const DriveTable& table);

struct SweepPoint {
    double snr_db = 0.0;
    metrics::Value outage, outage_asymptotic, ber, capacity;
    double capacity_ceiling = 0.0;
    McPoint mc;
    std::string error;  // empty unless this point failed
};

std::vector<SweepPoint> run_sweep(const SystemConfig& sys, const McConfig& mc, const std::vector<double>& snr_db);

}  // namespace relaylab::montecarlo
