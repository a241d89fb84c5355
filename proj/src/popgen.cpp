#include "modeshift/popgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

namespace modeshift {

namespace {

std::vector<std::size_t> strides_for(const SeedTable& t) {
    const std::size_t d = t.categories.size();
    std::vector<std::size_t> strides(d, 1);
    for (std::size_t i = d; i-- > 1;) strides[i - 1] = strides[i] * t.categories[i].size();
    return strides;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace

std::size_t SeedTable::cell_count() const {
    std::size_t n = 1;
    for (const auto& c : categories) n *= c.size();
    return n;
}

std::size_t SeedTable::coordinate(std::size_t cell, std::size_t d) const {
    std::size_t stride = 1;
    for (std::size_t i = categories.size(); i-- > d + 1;) stride *= categories[i].size();
    return (cell / stride) % categories[d].size();
}

IpfResult ipf_fit(const SeedTable& seed, const MarginalSet& targets, double tol, int max_iter) {
    if (!(tol > 0.0)) throw PopgenError("ipf_fit: tol must be > 0");
    const std::size_t dims = seed.categories.size();
    if (targets.targets.size() != dims)
        throw PopgenError("ipf_fit: marginal set does not match seed dimensions");
    for (std::size_t d = 0; d < dims; ++d) {
        if (targets.targets[d].size() != seed.dimension_size(d))
            throw PopgenError("ipf_fit: marginal categories do not match seed dimension " +
                              seed.dimension_names[d]);
        for (double t : targets.targets[d])
            if (t < 0.0) throw PopgenError("ipf_fit: negative marginal target");
    }
    // Consistency across dimensions is required for convergence to all targets.
    double total0 = std::accumulate(targets.targets[0].begin(), targets.targets[0].end(), 0.0);
    for (std::size_t d = 1; d < dims; ++d) {
        const double total =
            std::accumulate(targets.targets[d].begin(), targets.targets[d].end(), 0.0);
        if (std::fabs(total - total0) > 1e-9 * std::max(1.0, std::fabs(total0)))
            throw PopgenError("ipf_fit: marginal totals differ between dimensions");
    }

    const auto strides = strides_for(seed);
    IpfResult res;
    res.weights = seed.cells;
    const std::size_t n = seed.cell_count();
    if (res.weights.size() != n) throw PopgenError("ipf_fit: seed cell count mismatch");

    auto total_error = [&]() {
        double err = 0.0;
        for (std::size_t d = 0; d < dims; ++d) {
            std::vector<double> sums(seed.dimension_size(d), 0.0);
            for (std::size_t cell = 0; cell < n; ++cell)
                sums[(cell / strides[d]) % seed.dimension_size(d)] += res.weights[cell];
            for (std::size_t c = 0; c < sums.size(); ++c)
                err += std::fabs(sums[c] - targets.targets[d][c]);
        }
        return err;
    };

    for (int iter = 1; iter <= max_iter; ++iter) {
        for (std::size_t d = 0; d < dims; ++d) {
            const std::size_t size = seed.dimension_size(d);
            std::vector<double> sums(size, 0.0);
            for (std::size_t cell = 0; cell < n; ++cell)
                sums[(cell / strides[d]) % size] += res.weights[cell];
            std::vector<double> factor(size, 0.0);
            for (std::size_t c = 0; c < size; ++c) {
                const double target = targets.targets[d][c];
                if (sums[c] == 0.0) {
                    if (target > 0.0)
                        throw PopgenError("ipf_fit: infeasible, no seed mass for " +
                                          seed.dimension_names[d] + "=" +
                                          seed.categories[d][c] + " but target is positive");
                    factor[c] = 0.0;
                } else {
                    factor[c] = target / sums[c];
                }
            }
            for (std::size_t cell = 0; cell < n; ++cell)
                res.weights[cell] *= factor[(cell / strides[d]) % size];
        }
        res.iterations = iter;
        res.total_absolute_error = total_error();
        res.error_history.push_back(res.total_absolute_error);
        if (res.total_absolute_error <= tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

std::vector<std::int64_t> trs_integerise(const std::vector<double>& weights, RngStream& rng) {
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0 || !std::isfinite(w)) throw PopgenError("trs_integerise: bad weight");
        total += w;
    }
    if (!(total > 0.0)) throw PopgenError("trs_integerise: total weight must be > 0");

    const std::size_t n = weights.size();
    std::vector<std::int64_t> counts(n);
    std::vector<double> frac(n);
    std::int64_t floor_sum = 0;
    double frac_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double fl = std::floor(weights[i]);
        counts[i] = static_cast<std::int64_t>(fl);
        frac[i] = weights[i] - fl;
        floor_sum += counts[i];
        frac_sum += frac[i];
    }

    const std::int64_t topup = std::llround(total) - floor_sum;
    if (topup <= 0) return counts;
    if (!(frac_sum > 0.0)) {
        counts.back() += topup;  // all-integer weights rounded up; degenerate
        return counts;
    }

    // Systematic sampling: `topup` equally spaced points on [0, frac_sum).
    // Inclusion probability of each cell is proportional to its fractional
    // part, and the number of selections is exact by construction.
    const double stride = frac_sum / static_cast<double>(topup);
    double pos = rng.next_double() * stride;
    double cum = 0.0;
    std::int64_t placed = 0;
    for (std::size_t i = 0; i < n && placed < topup; ++i) {
        cum += frac[i];
        while (pos < cum && placed < topup) {
            ++counts[i];
            ++placed;
            pos += stride;
        }
    }
    // Guard against the last point falling off the end by rounding.
    for (std::size_t i = n; placed < topup && i-- > 0;) {
        if (frac[i] > 0.0) {
            ++counts[i];
            ++placed;
        }
    }
    return counts;
}

double bicycle_ownership_probability(const PopgenConfig& cfg,
                                     const std::map<std::string, std::string>& attributes) {
    double eta = cfg.bicycle_intercept;
    for (const auto& term : cfg.bicycle_terms) {
        auto it = attributes.find(term.dimension);
        if (it != attributes.end() && it->second == term.category) eta += term.coefficient;
    }
    return 1.0 / (1.0 + std::exp(-eta));
}

double distance_bound_m(TransportMode mode) {
    switch (mode) {
        case TransportMode::Walk: return 10000.0;
        case TransportMode::Cycle: return 40000.0;
        case TransportMode::PublicTransport:
        case TransportMode::Car: return 80000.0;
    }
    return 80000.0;
}

double sample_commute_distance(TransportMode mode, const DistanceSpec& spec, RngStream& rng) {
    const double bound = distance_bound_m(mode);
    constexpr int kMaxAttempts = 1000000;  // acceptance below 1e-6 is a misconfiguration
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        double d;
        if (spec.kind == DistanceSpec::Kind::LogNormal) {
            d = rng.next_lognormal(spec.mu, spec.sigma);
        } else {
            d = rng.next_bernoulli(spec.weight1) ? rng.next_normal(spec.mean1, spec.sd1)
                                                 : rng.next_normal(spec.mean2, spec.sd2);
        }
        if (d > 0.0 && d <= bound) return d;
    }
    throw PopgenError("sample_commute_distance: acceptance probability too low for " +
                      std::string(mode_name(mode)));
}

CommuteCategory classify_commute(double distance_m) {
    if (!(distance_m > 0.0)) throw PopgenError("classify_commute: distance must be positive");
    if (distance_m <= 4943.0) return CommuteCategory::Local;
    if (distance_m <= 20059.0) return CommuteCategory::City;
    return CommuteCategory::Beyond;
}

SeedTable builtin_seed_table() {
    SeedTable t;
    t.dimension_names = {"sex", "age_group", "car_usage"};
    t.categories = {{"female", "male"}, {"16_34", "35_54", "55_plus"}, {"none", "light", "heavy"}};
    // sex x age_group x car_usage, row-major. Younger commuters skew carless;
    // older skew heavier car usage.
    t.cells = {
        // female
        9.0, 6.0, 3.0,   // 16_34: none, light, heavy
        6.0, 7.0, 5.0,   // 35_54
        3.0, 4.0, 5.0,   // 55_plus
        // male
        8.0, 6.0, 4.0,   // 16_34
        5.0, 7.0, 6.0,   // 35_54
        2.0, 4.0, 6.0,   // 55_plus
    };
    return t;
}

MarginalSet builtin_marginals(const SeedTable& seed, int agent_count) {
    // Target proportions per dimension; converted to integer counts by
    // largest remainder so every dimension totals agent_count exactly.
    const std::vector<std::vector<double>> props = {
        {0.52, 0.48},         // sex
        {0.40, 0.38, 0.22},   // age_group
        {0.42, 0.33, 0.25},   // car_usage
    };
    MarginalSet m;
    for (std::size_t d = 0; d < seed.categories.size(); ++d) {
        const auto& p = props.at(d);
        std::vector<double> t(p.size());
        std::vector<std::pair<double, std::size_t>> rem(p.size());
        long long assigned = 0;
        for (std::size_t c = 0; c < p.size(); ++c) {
            const double exact = p[c] * agent_count;
            t[c] = std::floor(exact);
            assigned += static_cast<long long>(t[c]);
            rem[c] = {exact - t[c], c};
        }
        std::sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        const long long leftover = agent_count - assigned;
        for (long long i = 0; i < leftover; ++i) t[rem[i % rem.size()].second] += 1.0;
        m.targets.push_back(std::move(t));
    }
    return m;
}

namespace {

TransportMode sample_initial_mode(const ScenarioConfig& cfg, CommuteCategory cat, bool has_bike,
                                  bool has_car, RngStream& rng) {
    const ModeVector<double>& shares =
        cfg.popgen.mode_shares_by_category[static_cast<int>(cat)];
    const std::size_t pick = rng.next_discrete(shares.values.data(), kModeCount);
    TransportMode mode = static_cast<TransportMode>(pick);
    const auto allowed = [&](TransportMode m) {
        if (m == TransportMode::Car && !has_car) return false;
        if (m == TransportMode::Cycle && !has_bike) return false;
        return true;
    };
    if (allowed(mode)) return mode;
    // Fall back to the category's next-most-common allowed mode.
    std::array<TransportMode, kModeCount> order = all_modes;
    std::stable_sort(order.begin(), order.end(),
                     [&](TransportMode a, TransportMode b) { return shares[a] > shares[b]; });
    for (TransportMode m : order)
        if (allowed(m)) return m;
    return TransportMode::Walk;  // unreachable: walk is always allowed
}

}  // namespace

std::vector<SynthAgentRecord> synthesize_population(const ScenarioConfig& cfg) {
    SeedTable seed = cfg.popgen.seed_table_path.empty() ? builtin_seed_table()
                                                        : read_seed_table(cfg.popgen.seed_table_path);
    MarginalSet marginals = cfg.popgen.marginals_path.empty()
                                ? builtin_marginals(seed, cfg.agent_count)
                                : read_marginals(seed, cfg.popgen.marginals_path);

    IpfResult fit =
        ipf_fit(seed, marginals, cfg.popgen.ipf_tolerance, cfg.popgen.ipf_max_iterations);
    if (!fit.converged)
        throw PopgenError("synthesize_population: IPF did not converge (error " +
                          std::to_string(fit.total_absolute_error) + ")");

    RngStream trs_rng = derive_rng_stream(cfg.master_seed, "trs", 0);
    const std::vector<std::int64_t> counts = trs_integerise(fit.weights, trs_rng);

    std::vector<SynthAgentRecord> records;
    records.reserve(cfg.agent_count);
    const std::size_t dims = seed.categories.size();

    std::int64_t id = 0;
    for (std::size_t cell = 0; cell < counts.size(); ++cell) {
        std::map<std::string, std::string> attrs;
        for (std::size_t d = 0; d < dims; ++d)
            attrs[seed.dimension_names[d]] = seed.categories[d][seed.coordinate(cell, d)];
        const bool car_owner = [&] {
            auto it = attrs.find(cfg.popgen.car_usage_dimension);
            return it != attrs.end() && it->second != cfg.popgen.car_none_category;
        }();
        const double p_bike = bicycle_ownership_probability(cfg.popgen, attrs);

        for (std::int64_t c = 0; c < counts[cell]; ++c, ++id) {
            RngStream rng = derive_rng_stream(cfg.master_seed, "agent", id);
            SynthAgentRecord rec;
            rec.id = id;
            rec.attributes = attrs;
            rec.car_owner = car_owner;
            rec.bicycle_owner = rng.next_bernoulli(p_bike);
            const std::size_t provisional =
                rng.next_discrete(cfg.popgen.provisional_mode_mix.values.data(), kModeCount);
            const TransportMode pmode = static_cast<TransportMode>(provisional);
            rec.commute_distance_m =
                sample_commute_distance(pmode, cfg.popgen.distance[pmode], rng);
            rec.commute_category = classify_commute(rec.commute_distance_m);
            rec.initial_mode = sample_initial_mode(cfg, rec.commute_category, rec.bicycle_owner,
                                                   rec.car_owner, rng);
            records.push_back(std::move(rec));
        }
    }
    return records;
}

void write_population(const std::vector<SynthAgentRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw PopgenError("cannot write population to '" + path + "'");
    if (records.empty()) throw PopgenError("write_population: empty population");

    out << "id";
    for (const auto& [dim, _] : records.front().attributes) out << ',' << dim;
    out << ",bicycle_owner,car_owner,commute_distance_m,commute_category,initial_mode\n";

    char buf[32];
    for (const auto& rec : records) {
        out << rec.id;
        for (const auto& [_, value] : rec.attributes) out << ',' << value;
        std::snprintf(buf, sizeof(buf), "%.3f", rec.commute_distance_m);
        out << ',' << (rec.bicycle_owner ? 1 : 0) << ',' << (rec.car_owner ? 1 : 0) << ',' << buf
            << ',' << category_name(rec.commute_category) << ',' << mode_name(rec.initial_mode)
            << '\n';
    }
}

std::vector<SynthAgentRecord> read_population(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PopgenError("cannot open population file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw PopgenError("population file '" + path + "' is empty");
    const std::vector<std::string> header = split_csv(line);
    if (header.size() < 6 || header.front() != "id")
        throw PopgenError("population file '" + path + "': unexpected header");
    const std::size_t fixed_tail = 5;
    const std::size_t dim_count = header.size() - 1 - fixed_tail;

    std::vector<SynthAgentRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != header.size())
            throw PopgenError("population file '" + path + "': ragged row");
        SynthAgentRecord rec;
        rec.id = std::stoll(f[0]);
        for (std::size_t d = 0; d < dim_count; ++d) rec.attributes[header[1 + d]] = f[1 + d];
        std::size_t i = 1 + dim_count;
        rec.bicycle_owner = f[i++] == "1";
        rec.car_owner = f[i++] == "1";
        rec.commute_distance_m = std::stod(f[i++]);
        auto cat = parse_category(f[i++]);
        auto mode = parse_mode(f[i++]);
        if (!cat || !mode) throw PopgenError("population file '" + path + "': bad enum value");
        rec.commute_category = *cat;
        rec.initial_mode = *mode;
        records.push_back(std::move(rec));
    }
    return records;
}

SeedTable read_seed_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PopgenError("cannot open seed table '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw PopgenError("seed table '" + path + "' is empty");
    std::vector<std::string> header = split_csv(line);
    if (header.size() < 2 || header.back() != "weight")
        throw PopgenError("seed table '" + path + "': header must end with 'weight'");

    SeedTable t;
    t.dimension_names.assign(header.begin(), header.end() - 1);
    t.categories.resize(t.dimension_names.size());

    std::vector<std::pair<std::vector<std::string>, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> f = split_csv(line);
        if (f.size() != header.size()) throw PopgenError("seed table '" + path + "': ragged row");
        const double w = std::stod(f.back());
        f.pop_back();
        for (std::size_t d = 0; d < f.size(); ++d) {
            auto& cats = t.categories[d];
            if (std::find(cats.begin(), cats.end(), f[d]) == cats.end()) cats.push_back(f[d]);
        }
        rows.emplace_back(std::move(f), w);
    }

    t.cells.assign(t.cell_count(), 0.0);
    const auto strides = strides_for(t);
    for (const auto& [cats, w] : rows) {
        std::size_t cell = 0;
        for (std::size_t d = 0; d < cats.size(); ++d) {
            const auto& list = t.categories[d];
            const std::size_t c =
                std::find(list.begin(), list.end(), cats[d]) - list.begin();
            cell += c * strides[d];
        }
        t.cells[cell] += w;
    }
    return t;
}

MarginalSet read_marginals(const SeedTable& seed, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PopgenError("cannot open marginals file '" + path + "'");
    MarginalSet m;
    for (const auto& cats : seed.categories) m.targets.emplace_back(cats.size(), 0.0);

    std::string line;
    if (!std::getline(in, line)) throw PopgenError("marginals file '" + path + "' is empty");
    if (split_csv(line) != std::vector<std::string>{"dimension", "category", "target"})
        throw PopgenError("marginals file '" + path +
                          "': header must be 'dimension,category,target'");
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> f = split_csv(line);
        if (f.size() != 3) throw PopgenError("marginals file '" + path + "': ragged row");
        const auto dit = std::find(seed.dimension_names.begin(), seed.dimension_names.end(), f[0]);
        if (dit == seed.dimension_names.end())
            throw PopgenError("marginals file '" + path + "': unknown dimension '" + f[0] + "'");
        const std::size_t d = dit - seed.dimension_names.begin();
        const auto& cats = seed.categories[d];
        const auto cit = std::find(cats.begin(), cats.end(), f[1]);
        if (cit == cats.end())
            throw PopgenError("marginals file '" + path + "': unknown category '" + f[1] + "'");
        m.targets[d][cit - cats.begin()] = std::stod(f[2]);
    }
    return m;
}

}  // namespace modeshift
