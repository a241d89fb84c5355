#include "modeshift/config_io.hpp"

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"
#include "modeshift/rng.hpp"

namespace modeshift {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config: " + path + ": " + msg);
}

// Wraps one JSON object and rejects keys that were never consumed.
class ObjReader {
   public:
    ObjReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
    }

    bool has(const std::string& key) {
        if (j_.contains(key)) {
            seen_.insert(key);
            return true;
        }
        return false;
    }

    const json& at(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    template <typename T>
    void read(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            fail(path_ + "." + key, e.what());
        }
    }

    std::string sub_path(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!seen_.count(it.key())) fail(path_, "unknown key '" + it.key() + "'");
        }
    }

   private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

ModeVector<double> parse_mode_vector(const json& j, const std::string& path) {
    ObjReader r(j, path);
    ModeVector<double> v;
    for (TransportMode m : all_modes) {
        const std::string key(mode_name(m));
        if (!r.has(key)) fail(path, "missing mode '" + key + "'");
        if (!j.at(key).is_number()) fail(path + "." + key, "expected a number");
        v[m] = j.at(key).get<double>();
    }
    r.finish();
    return v;
}

json dump_mode_vector(const ModeVector<double>& v) {
    json j;
    for (TransportMode m : all_modes) j[std::string(mode_name(m))] = v[m];
    return j;
}

TransportMode parse_mode_or_fail(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a mode name");
    auto m = parse_mode(j.get<std::string>());
    if (!m) fail(path, "unknown mode '" + j.get<std::string>() + "'");
    return *m;
}

void parse_weather_cfg(const json& j, const std::string& path, WeatherConfig& w) {
    ObjReader r(j, path);
    if (r.has("transition")) {
        const json& t = j.at("transition");
        if (!t.is_array() || t.size() != 2 || !t[0].is_array() || t[0].size() != 2 ||
            !t[1].is_array() || t[1].size() != 2)
            fail(path + ".transition", "expected a 2x2 matrix");
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) w.transition[a][b] = t[a][b].get<double>();
    }
    if (r.has("initial")) {
        auto ww = parse_weather(j.at("initial").get<std::string>());
        if (!ww) fail(path + ".initial", "expected 'wet' or 'dry'");
        w.initial = *ww;
    }
    if (r.has("modifier")) {
        ObjReader m(j.at("modifier"), path + ".modifier");
        if (m.has("wet")) w.modifier_wet = parse_mode_vector(j.at("modifier").at("wet"), path + ".modifier.wet");
        if (m.has("dry")) w.modifier_dry = parse_mode_vector(j.at("modifier").at("dry"), path + ".modifier.dry");
        m.finish();
    }
    r.read("rainfall_file", w.rainfall_file);
    r.read("rain_threshold_mm", w.rain_threshold_mm);
    r.finish();
}

DistanceSpec parse_distance_spec(const json& j, const std::string& path) {
    ObjReader r(j, path);
    DistanceSpec s;
    std::string kind;
    r.read("kind", kind);
    if (kind == "log_normal") {
        s.kind = DistanceSpec::Kind::LogNormal;
        r.read("mu", s.mu);
        r.read("sigma", s.sigma);
    } else if (kind == "gaussian_mixture_2") {
        s.kind = DistanceSpec::Kind::GaussianMixture2;
        r.read("weight1", s.weight1);
        r.read("mean1", s.mean1);
        r.read("sd1", s.sd1);
        r.read("mean2", s.mean2);
        r.read("sd2", s.sd2);
    } else {
        fail(path + ".kind", "expected 'log_normal' or 'gaussian_mixture_2'");
    }
    r.finish();
    return s;
}

json dump_distance_spec(const DistanceSpec& s) {
    json j;
    if (s.kind == DistanceSpec::Kind::LogNormal) {
        j["kind"] = "log_normal";
        j["mu"] = s.mu;
        j["sigma"] = s.sigma;
    } else {
        j["kind"] = "gaussian_mixture_2";
        j["weight1"] = s.weight1;
        j["mean1"] = s.mean1;
        j["sd1"] = s.sd1;
        j["mean2"] = s.mean2;
        j["sd2"] = s.sd2;
    }
    return j;
}

void parse_popgen(const json& j, const std::string& path, PopgenConfig& p) {
    ObjReader r(j, path);
    r.read("seed_table_path", p.seed_table_path);
    r.read("marginals_path", p.marginals_path);
    r.read("ipf_tolerance", p.ipf_tolerance);
    r.read("ipf_max_iterations", p.ipf_max_iterations);
    r.read("bicycle_intercept", p.bicycle_intercept);
    if (r.has("bicycle_terms")) {
        p.bicycle_terms.clear();
        const json& terms = j.at("bicycle_terms");
        if (!terms.is_array()) fail(path + ".bicycle_terms", "expected an array");
        for (std::size_t i = 0; i < terms.size(); ++i) {
            ObjReader t(terms[i], path + ".bicycle_terms[" + std::to_string(i) + "]");
            LogisticTerm term;
            t.read("dimension", term.dimension);
            t.read("category", term.category);
            t.read("coefficient", term.coefficient);
            t.finish();
            p.bicycle_terms.push_back(std::move(term));
        }
    }
    r.read("car_usage_dimension", p.car_usage_dimension);
    r.read("car_none_category", p.car_none_category);
    if (r.has("distance")) {
        ObjReader d(j.at("distance"), path + ".distance");
        for (TransportMode m : all_modes) {
            const std::string key(mode_name(m));
            if (d.has(key))
                p.distance[m] = parse_distance_spec(j.at("distance").at(key),
                                                    path + ".distance." + key);
        }
        d.finish();
    }
    if (r.has("provisional_mode_mix"))
        p.provisional_mode_mix =
            parse_mode_vector(j.at("provisional_mode_mix"), path + ".provisional_mode_mix");
    if (r.has("mode_shares_by_category")) {
        ObjReader s(j.at("mode_shares_by_category"), path + ".mode_shares_by_category");
        for (int c = 0; c < kCategoryCount; ++c) {
            const std::string key(category_name(static_cast<CommuteCategory>(c)));
            if (s.has(key))
                p.mode_shares_by_category[c] = parse_mode_vector(
                    j.at("mode_shares_by_category").at(key),
                    path + ".mode_shares_by_category." + key);
        }
        s.finish();
    }
    r.finish();
}

}  // namespace

ScenarioConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    ObjReader r(j, "$");

    int agent_count = 111166;
    if (r.has("agent_count")) agent_count = j.at("agent_count").get<int>();
    int neighbourhood_count = 20;
    if (r.has("neighbourhood_count")) neighbourhood_count = j.at("neighbourhood_count").get<int>();

    ScenarioConfig cfg = default_config(agent_count);
    if (neighbourhood_count != cfg.neighbourhood_count) {
        cfg.neighbourhood_count = neighbourhood_count;
        cfg.neighbourhoods = default_neighbourhoods(neighbourhood_count, agent_count);
    }

    r.read("total_days", cfg.total_days);
    r.read("master_seed", cfg.master_seed);
    r.read("network_replicates", cfg.network_replicates);

    if (r.has("subcultures")) {
        const json& subs = j.at("subcultures");
        if (!subs.is_array() || subs.empty()) fail("$.subcultures", "expected a non-empty array");
        cfg.subcultures.clear();
        for (std::size_t i = 0; i < subs.size(); ++i) {
            const std::string p = "$.subcultures[" + std::to_string(i) + "]";
            ObjReader s(subs[i], p);
            Subculture sc;
            s.read("id", sc.id);
            if (!s.has("desirability")) fail(p, "missing 'desirability'");
            sc.desirability = parse_mode_vector(subs[i].at("desirability"), p + ".desirability");
            s.finish();
            cfg.subcultures.push_back(std::move(sc));
        }
    }

    if (r.has("weather")) parse_weather_cfg(j.at("weather"), "$.weather", cfg.weather);

    if (r.has("distance_cost")) {
        ObjReader d(j.at("distance_cost"), "$.distance_cost");
        for (int c = 0; c < kCategoryCount; ++c) {
            const std::string key(category_name(static_cast<CommuteCategory>(c)));
            if (d.has(key))
                cfg.distance_cost[c] =
                    parse_mode_vector(j.at("distance_cost").at(key), "$.distance_cost." + key);
        }
        d.finish();
    }

    if (r.has("neighbourhoods")) {
        const json& nbs = j.at("neighbourhoods");
        if (!nbs.is_array()) fail("$.neighbourhoods", "expected an array");
        cfg.neighbourhoods.clear();
        for (std::size_t i = 0; i < nbs.size(); ++i) {
            const std::string p = "$.neighbourhoods[" + std::to_string(i) + "]";
            ObjReader n(nbs[i], p);
            NeighbourhoodConfig nb;
            n.read("id", nb.id);
            if (!n.has("supportiveness")) fail(p, "missing 'supportiveness'");
            nb.supportiveness =
                parse_mode_vector(nbs[i].at("supportiveness"), p + ".supportiveness");
            if (!n.has("capacity")) fail(p, "missing 'capacity'");
            nb.capacity = parse_mode_vector(nbs[i].at("capacity"), p + ".capacity");
            n.finish();
            cfg.neighbourhoods.push_back(std::move(nb));
        }
    }

    if (r.has("intervention")) {
        ObjReader iv(j.at("intervention"), "$.intervention");
        if (iv.has("kind")) {
            const std::string kind = j.at("intervention").at("kind").get<std::string>();
            if (kind == "none")
                cfg.intervention.kind = InterventionKind::None;
            else if (kind == "car_free_days")
                cfg.intervention.kind = InterventionKind::CarFreeDays;
            else
                fail("$.intervention.kind", "expected 'none' or 'car_free_days'");
        }
        if (iv.has("banned_mode"))
            cfg.intervention.banned_mode =
                parse_mode_or_fail(j.at("intervention").at("banned_mode"),
                                   "$.intervention.banned_mode");
        iv.read("weekday", cfg.intervention.weekday);
        iv.read("start_day", cfg.intervention.start_day);
        iv.finish();
    }

    if (r.has("network")) {
        ObjReader n(j.at("network"), "$.network");
        n.read("small_world_k", cfg.network.small_world_k);
        n.read("small_world_beta", cfg.network.small_world_beta);
        n.read("ba_m0", cfg.network.ba_m0);
        n.read("ba_m", cfg.network.ba_m);
        n.read("regenerate_neighbour_networks", cfg.network.regenerate_neighbour_networks);
        n.finish();
    }

    if (r.has("popgen")) parse_popgen(j.at("popgen"), "$.popgen", cfg.popgen);

    if (r.has("engine")) {
        ObjReader e(j.at("engine"), "$.engine");
        if (e.has("tie_break")) {
            const json& tb = j.at("engine").at("tie_break");
            if (!tb.is_array() || tb.size() != kModeCount)
                fail("$.engine.tie_break", "expected an array of the four modes");
            for (int i = 0; i < kModeCount; ++i)
                cfg.engine.tie_break[i] =
                    parse_mode_or_fail(tb[i], "$.engine.tie_break[" + std::to_string(i) + "]");
        }
        if (e.has("weather_cost_mode")) {
            const std::string wcm = j.at("engine").at("weather_cost_mode").get<std::string>();
            if (wcm == "interpolated")
                cfg.engine.weather_cost_mode = WeatherCostMode::Interpolated;
            else if (wcm == "literal")
                cfg.engine.weather_cost_mode = WeatherCostMode::Literal;
            else
                fail("$.engine.weather_cost_mode", "expected 'interpolated' or 'literal'");
        }
        e.finish();
    }

    if (r.has("analysis")) {
        ObjReader a(j.at("analysis"), "$.analysis");
        a.read("burn_in_days", cfg.analysis.burn_in_days);
        a.read("moving_average_window", cfg.analysis.moving_average_window);
        a.finish();
    }

    r.finish();
    return cfg;
}

ScenarioConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string serialize_config(const ScenarioConfig& cfg) {
    json j;
    j["agent_count"] = cfg.agent_count;
    j["neighbourhood_count"] = cfg.neighbourhood_count;
    j["total_days"] = cfg.total_days;
    j["master_seed"] = cfg.master_seed;
    j["network_replicates"] = cfg.network_replicates;

    j["subcultures"] = json::array();
    for (const auto& sc : cfg.subcultures) {
        json s;
        s["id"] = sc.id;
        s["desirability"] = dump_mode_vector(sc.desirability);
        j["subcultures"].push_back(s);
    }

    json w;
    w["transition"] = {{cfg.weather.transition[0][0], cfg.weather.transition[0][1]},
                       {cfg.weather.transition[1][0], cfg.weather.transition[1][1]}};
    w["initial"] = std::string(weather_name(cfg.weather.initial));
    w["modifier"]["wet"] = dump_mode_vector(cfg.weather.modifier_wet);
    w["modifier"]["dry"] = dump_mode_vector(cfg.weather.modifier_dry);
    w["rainfall_file"] = cfg.weather.rainfall_file;
    w["rain_threshold_mm"] = cfg.weather.rain_threshold_mm;
    j["weather"] = w;

    for (int c = 0; c < kCategoryCount; ++c)
        j["distance_cost"][std::string(category_name(static_cast<CommuteCategory>(c)))] =
            dump_mode_vector(cfg.distance_cost[c]);

    j["neighbourhoods"] = json::array();
    for (const auto& nb : cfg.neighbourhoods) {
        json n;
        n["id"] = nb.id;
        n["supportiveness"] = dump_mode_vector(nb.supportiveness);
        n["capacity"] = dump_mode_vector(nb.capacity);
        j["neighbourhoods"].push_back(n);
    }

    json iv;
    iv["kind"] = cfg.intervention.kind == InterventionKind::None ? "none" : "car_free_days";
    iv["banned_mode"] = std::string(mode_name(cfg.intervention.banned_mode));
    iv["weekday"] = cfg.intervention.weekday;
    iv["start_day"] = cfg.intervention.start_day;
    j["intervention"] = iv;

    json n;
    n["small_world_k"] = cfg.network.small_world_k;
    n["small_world_beta"] = cfg.network.small_world_beta;
    n["ba_m0"] = cfg.network.ba_m0;
    n["ba_m"] = cfg.network.ba_m;
    n["regenerate_neighbour_networks"] = cfg.network.regenerate_neighbour_networks;
    j["network"] = n;

    json p;
    p["seed_table_path"] = cfg.popgen.seed_table_path;
    p["marginals_path"] = cfg.popgen.marginals_path;
    p["ipf_tolerance"] = cfg.popgen.ipf_tolerance;
    p["ipf_max_iterations"] = cfg.popgen.ipf_max_iterations;
    p["bicycle_intercept"] = cfg.popgen.bicycle_intercept;
    p["bicycle_terms"] = json::array();
    for (const auto& t : cfg.popgen.bicycle_terms) {
        json tj;
        tj["dimension"] = t.dimension;
        tj["category"] = t.category;
        tj["coefficient"] = t.coefficient;
        p["bicycle_terms"].push_back(tj);
    }
    p["car_usage_dimension"] = cfg.popgen.car_usage_dimension;
    p["car_none_category"] = cfg.popgen.car_none_category;
    for (TransportMode m : all_modes)
        p["distance"][std::string(mode_name(m))] = dump_distance_spec(cfg.popgen.distance[m]);
    p["provisional_mode_mix"] = dump_mode_vector(cfg.popgen.provisional_mode_mix);
    for (int c = 0; c < kCategoryCount; ++c)
        p["mode_shares_by_category"][std::string(category_name(static_cast<CommuteCategory>(c)))] =
            dump_mode_vector(cfg.popgen.mode_shares_by_category[c]);
    j["popgen"] = p;

    json e;
    e["tie_break"] = json::array();
    for (TransportMode m : cfg.engine.tie_break)
        e["tie_break"].push_back(std::string(mode_name(m)));
    e["weather_cost_mode"] =
        cfg.engine.weather_cost_mode == WeatherCostMode::Interpolated ? "interpolated" : "literal";
    j["engine"] = e;

    json a;
    a["burn_in_days"] = cfg.analysis.burn_in_days;
    a["moving_average_window"] = cfg.analysis.moving_average_window;
    j["analysis"] = a;

    return j.dump(2) + "\n";
}

std::string config_hash(const ScenarioConfig& cfg) {
    const std::uint64_t h = fnv1a64(serialize_config(cfg));
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace modeshift
