#include "depmet/stats.hpp"

#include "depmet/errors.hpp"
#include "depmet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace depmet {

namespace {

void require_nonempty(const SampleVector& v) {
    if (v.values.empty()) throw EmptyInput("empty sample vector '" + v.label + "'");
}

std::vector<double> sorted_copy(std::span<const double> values) {
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    return s;
}

double normal_sf(double z) {
    return 0.5 * std::erfc(z / std::sqrt(2.0));
}

// Average ranks (1-based) with ties shared.
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

std::optional<double> pearson_of(std::span<const double> a, std::span<const double> b) {
    const auto n = static_cast<double>(a.size());
    const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
    const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) return std::nullopt;
    return sab / std::sqrt(saa * sbb);
}

// Knight's O(n log n) Kendall tau-b: sort by (a, b), count discordant pairs
// as merge-sort inversions of the b sequence, correct for ties.
std::optional<double> kendall_tau_b(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (a[x] != a[y]) return a[x] < a[y];
        return b[x] < b[y];
    });

    auto tie_sum = [](const std::vector<double>& runs) {
        double s = 0.0;
        for (double t : runs) s += t * (t - 1.0) / 2.0;
        return s;
    };

    // Ties in a, and joint ties in (a, b).
    std::vector<double> a_runs, joint_runs;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && a[order[j + 1]] == a[order[i]]) ++j;
            a_runs.push_back(static_cast<double>(j - i + 1));
            std::size_t k = i;
            while (k <= j) {
                std::size_t m = k;
                while (m + 1 <= j && b[order[m + 1]] == b[order[k]]) ++m;
                joint_runs.push_back(static_cast<double>(m - k + 1));
                k = m + 1;
            }
            i = j + 1;
        }
    }

    // Inversions of b in a-order (strict), via merge sort.
    std::vector<double> seq(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) seq[i] = b[order[i]];
    double inversions = 0.0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (seq[j] < seq[i]) {
                    inversions += static_cast<double>(mid - i);
                    buf[k++] = seq[j++];
                } else {
                    buf[k++] = seq[i++];
                }
            }
            while (i < mid) buf[k++] = seq[i++];
            while (j < hi) buf[k++] = seq[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      seq.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }

    std::vector<double> b_runs;
    {
        std::vector<double> bs(b.begin(), b.end());
        std::sort(bs.begin(), bs.end());
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n && bs[j + 1] == bs[i]) ++j;
            b_runs.push_back(static_cast<double>(j - i + 1));
            i = j + 1;
        }
    }

    const double n0 = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    const double n1 = tie_sum(a_runs);
    const double n2 = tie_sum(b_runs);
    const double n3 = tie_sum(joint_runs);
    const double numerator = n0 - n1 - n2 + n3 - 2.0 * inversions;
    const double denom = std::sqrt((n0 - n1) * (n0 - n2));
    if (denom == 0.0) return std::nullopt;
    return numerator / denom;
}

} // namespace

DescribeResult describe(const SampleVector& v) {
    require_nonempty(v);
    DescribeResult r;
    r.count = v.values.size();
    r.mean = std::accumulate(v.values.begin(), v.values.end(), 0.0) /
             static_cast<double>(r.count);
    r.min = *std::min_element(v.values.begin(), v.values.end());
    r.max = *std::max_element(v.values.begin(), v.values.end());
    if (r.count > 1) {
        double ss = 0.0;
        for (double x : v.values) ss += (x - r.mean) * (x - r.mean);
        r.stddev = std::sqrt(ss / static_cast<double>(r.count - 1));
    }
    return r;
}

std::vector<EcdfPoint> ecdf_points(const SampleVector& v) {
    require_nonempty(v);
    const auto s = sorted_copy(v.values);
    const auto n = static_cast<double>(s.size());
    std::vector<EcdfPoint> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i + 1] == s[i]) continue; // keep last of a tie run
        out.push_back({s[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

double quantile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw EmptyInput("quantile of empty sample");
    if (p <= 0.0) return sorted.front();
    if (p >= 1.0) return sorted.back();
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (frac == 0.0 || lo + 1 >= sorted.size()) return sorted[lo];
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<QqPair> qq_pairs(const SampleVector& a, const SampleVector& b, std::size_t q) {
    require_nonempty(a);
    require_nonempty(b);
    if (q < 2) throw std::invalid_argument("need at least two quantiles");
    const auto sa = sorted_copy(a.values);
    const auto sb = sorted_copy(b.values);
    std::vector<QqPair> out;
    out.reserve(q);
    for (std::size_t k = 0; k < q; ++k) {
        const double p = static_cast<double>(k) / static_cast<double>(q - 1);
        out.push_back({p, quantile_sorted(sa, p), quantile_sorted(sb, p)});
    }
    return out;
}

CorrelationResult correlations(const SampleVector& a, const SampleVector& b) {
    require_nonempty(a);
    require_nonempty(b);
    if (a.values.size() != b.values.size())
        throw std::invalid_argument("correlation inputs must be paired");
    if (a.values.size() < 2) throw EmptyInput("need at least two pairs");

    CorrelationResult r;
    r.pearson = pearson_of(a.values, b.values);
    const auto ra = average_ranks(a.values);
    const auto rb = average_ranks(b.values);
    r.spearman = pearson_of(ra, rb);
    r.kendall_tau_b = kendall_tau_b(a.values, b.values);
    return r;
}

double kolmogorov_sf(double lambda) {
    if (lambda < 1e-3) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    double previous = 0.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = 2.0 * sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) <= 1e-10 * previous || std::abs(term) <= 1e-300) break;
        sign = -sign;
        previous = std::abs(term);
    }
    return std::clamp(sum, 0.0, 1.0);
}

TestResult ks_two_sample(const SampleVector& a, const SampleVector& b) {
    require_nonempty(a);
    require_nonempty(b);
    const auto sa = sorted_copy(a.values);
    const auto sb = sorted_copy(b.values);
    const auto n = static_cast<double>(sa.size());
    const auto m = static_cast<double>(sb.size());

    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        const double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n - static_cast<double>(j) / m));
    }
    // Tails beyond the shorter sample cannot widen the gap further: once one
    // side is exhausted its ECDF sits at 1 and the other only climbs toward 1.

    TestResult r;
    r.statistic = d;
    const double effective = n * m / (n + m);
    r.p_value = kolmogorov_sf(std::sqrt(effective) * d);
    return r;
}

TestResult mw_u(const SampleVector& a, const SampleVector& b) {
    require_nonempty(a);
    require_nonempty(b);
    const std::size_t n1 = a.values.size();
    const std::size_t n2 = b.values.size();
    std::vector<double> combined;
    combined.reserve(n1 + n2);
    combined.insert(combined.end(), a.values.begin(), a.values.end());
    combined.insert(combined.end(), b.values.begin(), b.values.end());
    const auto ranks = average_ranks(combined);

    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < n1; ++i) rank_sum_a += ranks[i];
    const double u1 = rank_sum_a - static_cast<double>(n1) * (static_cast<double>(n1) + 1.0) / 2.0;

    const double dn1 = static_cast<double>(n1), dn2 = static_cast<double>(n2);
    const double total = dn1 + dn2;
    const double mean = dn1 * dn2 / 2.0;

    // Tie correction over the pooled sample.
    double tie_term = 0.0;
    {
        auto s = sorted_copy(combined);
        std::size_t i = 0;
        while (i < s.size()) {
            std::size_t j = i;
            while (j + 1 < s.size() && s[j + 1] == s[i]) ++j;
            const double t = static_cast<double>(j - i + 1);
            tie_term += t * t * t - t;
            i = j + 1;
        }
    }
    const double variance =
        dn1 * dn2 / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));

    TestResult r;
    r.statistic = u1;
    if (variance <= 0.0) {
        r.p_value = 1.0; // all values tied
        return r;
    }
    double z = u1 - mean;
    z -= z > 0 ? 0.5 : (z < 0 ? -0.5 : 0.0); // continuity correction
    z /= std::sqrt(variance);
    r.p_value = std::clamp(2.0 * normal_sf(std::abs(z)), 0.0, 1.0);
    return r;
}

std::vector<SubsampleCell> subsample_protocol(const SampleVector& tood,
                                              const SampleVector& pfet,
                                              const StatsConfig& cfg) {
    require_nonempty(tood);
    require_nonempty(pfet);

    std::vector<SubsampleCell> out;
    for (std::size_t ti = 0; ti < cfg.max_tood_thresholds.size(); ++ti) {
        const double threshold = cfg.max_tood_thresholds[ti];
        std::vector<double> filtered;
        for (double v : tood.values)
            if (v <= threshold) filtered.push_back(v);

        for (std::size_t n : cfg.sample_sizes) {
            SubsampleCell ks_cell{threshold, n, "ks", 0, 0.0, 0.0};
            SubsampleCell mw_cell{threshold, n, "mw", 0, 0.0, 0.0};
            if (filtered.size() >= n && pfet.values.size() >= n && n > 0) {
                std::vector<double> ks_ps, mw_ps;
                ks_ps.reserve(cfg.repetitions);
                mw_ps.reserve(cfg.repetitions);
                std::size_t ks_reject = 0, mw_reject = 0;
                for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
                    Rng rng(derive_seed(cfg.rng_seed, ti, n, rep));
                    SampleVector sa{{}, "tood-sub"};
                    SampleVector sb{{}, "pfet-sub"};
                    for (std::size_t idx : rng.sample_indices(filtered.size(), n))
                        sa.values.push_back(filtered[idx]);
                    for (std::size_t idx : rng.sample_indices(pfet.values.size(), n))
                        sb.values.push_back(pfet.values[idx]);
                    const double pk = ks_two_sample(sa, sb).p_value;
                    const double pm = mw_u(sa, sb).p_value;
                    ks_ps.push_back(pk);
                    mw_ps.push_back(pm);
                    if (pk < cfg.alpha) ++ks_reject;
                    if (pm < cfg.alpha) ++mw_reject;
                }
                auto median = [](std::vector<double>& ps) {
                    std::sort(ps.begin(), ps.end());
                    const std::size_t h = ps.size() / 2;
                    return ps.size() % 2 ? ps[h] : (ps[h - 1] + ps[h]) / 2.0;
                };
                const auto reps = static_cast<double>(cfg.repetitions);
                ks_cell.repetitions_run = cfg.repetitions;
                ks_cell.median_p = median(ks_ps);
                ks_cell.rejection_fraction = static_cast<double>(ks_reject) / reps;
                mw_cell.repetitions_run = cfg.repetitions;
                mw_cell.median_p = median(mw_ps);
                mw_cell.rejection_fraction = static_cast<double>(mw_reject) / reps;
            }
            out.push_back(std::move(ks_cell));
            out.push_back(std::move(mw_cell));
        }
    }
    return out;
}

ExponentialFit fit_exponential(const SampleVector& v) {
    require_nonempty(v);
    for (double x : v.values)
        if (x < 0.0) throw std::invalid_argument("exponential fit needs nonnegative data");
    const double mean = std::accumulate(v.values.begin(), v.values.end(), 0.0) /
                        static_cast<double>(v.values.size());
    if (mean == 0.0) throw ZeroMean();

    ExponentialFit fit;
    fit.rate = 1.0 / mean;

    // One-sample KS against the fitted CDF.
    auto s = sorted_copy(v.values);
    const auto n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double cdf = 1.0 - std::exp(-fit.rate * s[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - cdf));
        d = std::max(d, std::abs(cdf - static_cast<double>(i) / n));
    }
    fit.ks_statistic = d;
    fit.ks_gof_p = kolmogorov_sf(std::sqrt(n) * d);
    fit.note = "rate estimated from the same sample; GOF p-value is optimistic";
    return fit;
}

} // namespace depmet
