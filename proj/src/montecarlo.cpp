#include "relaylab/montecarlo.hpp"

#include "relaylab/channel.hpp"
#include "relaylab/error.hpp"
#include "relaylab/specfun.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace relaylab::montecarlo {

namespace {

constexpr std::uint32_t kTagHops = 1, kTagSecondDraw = 2, kTagGeneric = 3;

// Runs fn(begin, end) for every chunk on mc.workers threads; results in chunk order.
template <class Acc, class Fn>
std::vector<Acc> run_chunks(const McConfig& mc, Fn&& fn) {
    mc.validate();
    const std::uint64_t n_chunks = (mc.samples + kChunk - 1) / kChunk;
    std::vector<Acc> out(n_chunks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            try {
                out[c] = fn(c * kChunk, std::min(mc.samples, (c + 1) * kChunk));
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!err) err = std::current_exception();
                next.store(n_chunks);
                return;
            }
        }
    };
    const int n_threads = static_cast<int>(std::min<std::uint64_t>(mc.workers, n_chunks));
    if (n_threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    return out;
}

struct Moments {
    double sum = 0.0, sq = 0.0;
    void add(double v) {
        sum += v;
        sq += v * v;
    }
};

Estimate mean_estimate(double sum, double sq, std::uint64_t n) {
    Estimate e;
    e.samples_used = n;
    e.mean = sum / n;
    if (n > 1) {
        const double var = std::max(0.0, (sq - sum * e.mean) / (n - 1));
        e.half_width_95 = 1.96 * std::sqrt(var / n);
    }
    return e;
}

Estimate binomial_estimate(std::uint64_t hits, std::uint64_t n) {
    const double p = static_cast<double>(hits) / n;
    return {p, 1.96 * std::sqrt(p * (1.0 - p) / n), n};
}

// Normalized (unit mean hop-1) SNRs of the selected relay.
struct Draw {
    double x1, y1, y2;
};

class Drawer {
public:
    explicit Drawer(const LinkShape& sh) : sh_(sh), x1_(sh.n_relays), y1_(sh.n_relays), y2_(sh.n_relays), b_(sh.n_relays) {}

    Draw draw(TrialStream& rng) {
        const int n = sh_.n_relays;
        for (int i = 0; i < n; ++i) {
            const auto a = channel::sample_csi_pair(rng, 1.0, sh_.rho1);
            const auto c = channel::sample_csi_pair(rng, 1.0, sh_.rho2);
            x1_[i] = std::norm(a.outdated);
            y1_[i] = std::norm(a.current);
            y2_[i] = sh_.gamma2_ratio * std::norm(c.current);
            b_[i] = std::min(x1_[i], sh_.gamma2_ratio * std::norm(c.outdated));
        }
        const int s = rank_index(b_, sh_.rank);
        return {x1_[s], y1_[s], y2_[s]};
    }

private:
    LinkShape sh_;
    std::vector<double> x1_, y1_, y2_, b_;
};

struct Prepared {
    relaying::Scheme scheme;
    double g1, g2, th, zeta, mean_g1, alpha, beta;
    const DriveTable* table = nullptr;
};

struct LaneAcc {
    std::uint64_t outage = 0;
    Moments ber, cap;
};

}  // namespace

int rank_index(const std::vector<double>& b, int rank) {
    const int n = static_cast<int>(b.size());
    for (int i = 0; i < n; ++i) {
        int below = 0;
        for (int j = 0; j < n; ++j) below += b[j] < b[i] || (b[j] == b[i] && j < i);
        if (below == rank - 1) return i;
    }
    return n - 1;
}

DriveTable::DriveTable(const hpa::HpaModel& model, double sigma_sq)
    : model_(model), sigma_sq_(sigma_sq), ideal_(std::holds_alternative<hpa::Ideal>(model)) {
    if (ideal_) return;
    delta0_ = hpa::bussgang(model, sigma_sq).delta;
    const int n = static_cast<int>((kHi - kLo) * kPerUnit) + 1;
    delta_.resize(n);
    rel_.resize(n);
    for (int i = 0; i < n; ++i) {
        const double s = std::exp(kLo + i / kPerUnit);
        const auto bp = hpa::bussgang(model, sigma_sq * s);
        delta_[i] = bp.delta;
        rel_[i] = bp.sigma_tau_sq / (sigma_sq * s);
    }
}

std::pair<double, double> DriveTable::at(double s) const {
    if (ideal_) return {1.0, 0.0};
    const double u = (std::log(s) - kLo) * kPerUnit;
    if (u <= 0.0) return {delta_.front(), rel_.front()};
    if (u >= delta_.size() - 1.0) {
        const auto bp = hpa::bussgang(model_, sigma_sq_ * s);
        return {bp.delta, bp.sigma_tau_sq / (sigma_sq_ * s)};
    }
    const auto i = static_cast<std::size_t>(u);
    const double f = u - i;
    return {delta_[i] + f * (delta_[i + 1] - delta_[i]), rel_[i] + f * (rel_[i + 1] - rel_[i])};
}

double sndr_full(double g1, double g2, double c, const DriveTable& t) {
    if (!(g1 > 0.0) || !(g2 > 0.0)) return 0.0;
    const auto [d, r] = t.at((g1 + 1.0) / (c + 1.0));
    const double zc = 1.0 + r * (g1 + 1.0) / (d * d);
    const double d0 = t.delta0();
    return g1 * g2 / (zc * g2 + (c + 1.0) * d0 * d0 / (d * d));
}

std::vector<McPoint> simulate(const LinkShape& shape, const std::vector<Lane>& lanes, const McConfig& mc) {
    mc.validate();
    channel::FadingConfig{shape.n_relays, shape.rank, 1.0, shape.gamma2_ratio, shape.rho1, shape.rho2}.validate();

    std::vector<std::pair<std::pair<hpa::HpaModel, double>, std::unique_ptr<DriveTable>>> tables;
    std::vector<Prepared> prep;
    for (const auto& l : lanes) {
        l.modulation.validate();
        if (!(l.gamma_th >= 0.0)) throw DomainError("simulate: threshold must be >= 0");
        const double g1 = db_to_linear(l.snr_db);
        const channel::FadingConfig c{shape.n_relays, shape.rank, g1, shape.gamma2_ratio * g1, shape.rho1, shape.rho2};
        const auto st = channel::hop_statistics(c);
        const double mean = channel::hop1_moment(1, c, st);
        const auto bp = hpa::bussgang(l.hpa, l.hpa_input_power);
        Prepared p{l.scheme, g1, c.gamma2_bar, l.gamma_th, metrics::surrogate_zeta(bp, l.hpa_input_power, mean),
                   mean, l.modulation.alpha, l.modulation.beta};
        if (mc.fidelity == Fidelity::Full) {
            const auto key = std::make_pair(l.hpa, l.hpa_input_power);
            auto it = std::find_if(tables.begin(), tables.end(), [&](const auto& e) { return e.first == key; });
            if (it == tables.end()) {
                tables.emplace_back(key, std::make_unique<DriveTable>(l.hpa, l.hpa_input_power));
                it = tables.end() - 1;
            }
            p.table = it->second.get();
        }
        prep.push_back(p);
    }

    const auto chunks = run_chunks<std::vector<LaneAcc>>(mc, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<LaneAcc> acc(prep.size());
        Drawer drawer(shape);
        for (std::uint64_t t = begin; t < end; ++t) {
            TrialStream rng(mc.seed, t, kTagHops);
            Draw d = drawer.draw(rng);
            if (mc.coupling == Coupling::Independent) {
                TrialStream rng2(mc.seed, t, kTagSecondDraw);
                d.y2 = drawer.draw(rng2).y2;
            }
            for (std::size_t i = 0; i < prep.size(); ++i) {
                const auto& p = prep[i];
                const double y1 = p.g1 * d.y1, y2 = p.g1 * d.y2, x1 = p.g1 * d.x1;
                double g;
                if (p.table) {
                    const double c = p.scheme == relaying::Scheme::FG ? p.mean_g1
                                     : p.scheme == relaying::Scheme::VGI ? x1
                                                                          : y1;
                    g = sndr_full(y1, y2, c, *p.table);
                } else {
                    g = relaying::sndr(p.scheme, {x1, y1, 0.0, y2}, p.zeta, p.mean_g1);
                }
                acc[i].outage += g < p.th;
                if (mc.outage_only) continue;
                acc[i].ber.add(0.5 * p.alpha * specfun::erfc(std::sqrt(p.beta * g)));
                acc[i].cap.add(0.5 * std::log2(1.0 + g));
            }
        }
        return acc;
    });

    std::vector<McPoint> out(prep.size());
    for (std::size_t i = 0; i < prep.size(); ++i) {
        std::uint64_t hits = 0;
        Moments b, c;
        for (const auto& ch : chunks) {
            hits += ch[i].outage;
            b.sum += ch[i].ber.sum, b.sq += ch[i].ber.sq;
            c.sum += ch[i].cap.sum, c.sq += ch[i].cap.sq;
        }
        out[i] = {binomial_estimate(hits, mc.samples), mean_estimate(b.sum, b.sq, mc.samples),
                  mean_estimate(c.sum, c.sq, mc.samples)};
    }
    return out;
}

Estimate estimate_mean(const McConfig& mc, const std::function<double(TrialStream&)>& f) {
    const auto chunks = run_chunks<Moments>(mc, [&](std::uint64_t begin, std::uint64_t end) {
        Moments m;
        for (std::uint64_t t = begin; t < end; ++t) {
            TrialStream rng(mc.seed, t, kTagGeneric);
            m.add(f(rng));
        }
        return m;
    });
    Moments tot;
    for (const auto& m : chunks) tot.sum += m.sum, tot.sq += m.sq;
    return mean_estimate(tot.sum, tot.sq, mc.samples);
}

LinkShape shape_of(const SystemConfig& sys) {
    return {sys.n_relays, sys.rank, sys.rho1, sys.rho2, sys.gamma2_ratio};
}

Lane lane_of(const SystemConfig& sys, double snr_db) {
    return {sys.scheme, snr_db, sys.gamma_th(), sys.hpa_model(), sys.hpa_input_power, sys.modulation};
}

Estimate estimate_outage(const SystemConfig& sys, const McConfig& mc, double snr_db) {
    return simulate(shape_of(sys), {lane_of(sys, snr_db)}, mc).front().outage;
}
Estimate estimate_ber(const SystemConfig& sys, const McConfig& mc, double snr_db) {
    return simulate(shape_of(sys), {lane_of(sys, snr_db)}, mc).front().ber;
}
Estimate estimate_capacity(const SystemConfig& sys, const McConfig& mc, double snr_db) {
    return simulate(shape_of(sys), {lane_of(sys, snr_db)}, mc).front().capacity;
}

std::vector<SweepPoint> run_sweep(const SystemConfig& sys, const McConfig& mc, const std::vector<double>& snr_db) {
    if (snr_db.empty()) throw DomainError("run_sweep: SNR grid is empty");
    sys.validate();
    std::vector<SweepPoint> out;
    const auto bp = sys.bussgang();
    for (double s : snr_db) {
        SweepPoint p;
        p.snr_db = s;
        try {
            const auto c = sys.fading(s);
            const auto st = channel::hop_statistics(c);
            const double zeta = sys.zeta(s), th = sys.gamma_th();
            p.outage = metrics::outage(sys.scheme, th, c, st, zeta);
            if (sys.scheme == relaying::Scheme::VGI)
                p.outage_asymptotic = {std::numeric_limits<double>::quiet_NaN(), metrics::Provenance::Asymptote,
                                       "no high-SNR form for vgi"};
            else
                p.outage_asymptotic = {metrics::outage_asymptote(sys.scheme, th, c, st, zeta).value,
                                       metrics::Provenance::Asymptote, ""};
            p.ber = metrics::ber_value(sys.scheme, sys.modulation, c, st, zeta);
            p.capacity = {metrics::capacity(sys.scheme, c, st, zeta), metrics::Provenance::Quadrature, ""};
            p.capacity_ceiling = metrics::capacity_ceiling(bp, sys.hpa_input_power);
        } catch (const std::exception& e) {
            p.error = e.what();
        }
        out.push_back(p);
    }
    std::vector<Lane> lanes;
    for (double s : snr_db) lanes.push_back(lane_of(sys, s));
    const auto mcp = simulate(shape_of(sys), lanes, mc);
    for (std::size_t i = 0; i < out.size(); ++i) out[i].mc = mcp[i];
    return out;
}

}  // namespace relaylab::montecarlo
