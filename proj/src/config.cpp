#include "decoh/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <initializer_list>
#include <string>

#include <json.hpp>

namespace decoh {

namespace {

using nlohmann::json;

void expect_keys(const json& j, const std::string& ctx,
                 std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw config_error("config: '" + ctx + "' must be an object");
    for (const auto& item : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) {
                return item.key() == a;
            }) == allowed.end())
            throw config_error("config: unknown key '" + item.key() + "' in " + ctx);
    }
}

template <typename T>
void read_if(const json& j, const char* key, T& out) {
    if (j.contains(key)) out = j.at(key).get<T>();
}

PotentialSpec parse_potential(const json& j) {
    if (!j.contains("type")) throw config_error("config: potential.type is required");
    const std::string type = j.at("type").get<std::string>();
    if (type == "delta") {
        expect_keys(j, "potential", {"type", "alpha"});
        DeltaPotential p;
        read_if(j, "alpha", p.alpha);
        return PotentialSpec{p};
    }
    if (type == "barrier") {
        expect_keys(j, "potential", {"type", "alpha", "a"});
        BarrierPotential p;
        read_if(j, "alpha", p.alpha);
        read_if(j, "a", p.a);
        return PotentialSpec{p};
    }
    if (type == "gaussian") {
        expect_keys(j, "potential", {"type", "alpha", "sigma_v"});
        GaussianPotential p;
        read_if(j, "alpha", p.alpha);
        read_if(j, "sigma_v", p.sigma_v);
        return PotentialSpec{p};
    }
    if (type == "tabulated") {
        expect_keys(j, "potential", {"type", "samples", "a"});
        TabulatedPotential p;
        if (!j.contains("samples"))
            throw config_error("config: tabulated potential needs 'samples'");
        for (const auto& s : j.at("samples")) {
            if (!s.is_array() || s.size() != 2)
                throw config_error("config: potential.samples entries must be [x, V] pairs");
            p.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
        }
        read_if(j, "a", p.a);
        return PotentialSpec{p};
    }
    throw config_error("config: unknown potential.type '" + type +
                       "' (expected delta, barrier, gaussian or tabulated)");
}

json potential_json(const PotentialSpec& pot) {
    json j;
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, DeltaPotential>) {
                j["type"] = "delta";
                j["alpha"] = p.alpha;
            } else if constexpr (std::is_same_v<T, BarrierPotential>) {
                j["type"] = "barrier";
                j["alpha"] = p.alpha;
                j["a"] = p.a;
            } else if constexpr (std::is_same_v<T, GaussianPotential>) {
                j["type"] = "gaussian";
                j["alpha"] = p.alpha;
                j["sigma_v"] = p.sigma_v;
            } else {
                j["type"] = "tabulated";
                j["a"] = p.a;
                json s = json::array();
                for (const auto& pr : p.samples) s.push_back({pr.first, pr.second});
                j["samples"] = s;
            }
        },
        pot.v);
    return j;
}

LightPacket parse_packet(const json& j, const std::string& ctx) {
    expect_keys(j, ctx, {"x_l", "sigma", "p"});
    LightPacket pk;
    read_if(j, "x_l", pk.x_l);
    read_if(j, "sigma", pk.sigma);
    read_if(j, "p", pk.p);
    return pk;
}

json packet_json(const LightPacket& pk) {
    return json{{"x_l", pk.x_l}, {"sigma", pk.sigma}, {"p", pk.p}};
}

}  // namespace

void RunConfig::validate() const {
    grid.validate();
    time.validate();
    heavy.validate();
    packet.validate();
    potential.validate();
    schedule.validate();
    oracle.validate();
    if (!(mass > 0.0)) throw config_error("mass must be positive");
    if (n_k < 2) throw config_error("quadrature.n_k must be at least 2");
    if (bvp_points < 64) throw config_error("quadrature.bvp_points must be at least 64");

    if (3.0 * heavy.sigma_H + heavy.X0 >= grid.H)
        throw config_error("heavy state does not fit the box: 3 sigma_H + X0 = " +
                           std::to_string(3.0 * heavy.sigma_H + heavy.X0) + " >= grid.H = " +
                           std::to_string(grid.H));

    if (heavy.p_H > 0.0) {
        const double t_star = heavy.X0 * mass / heavy.p_H;
        if (t_star > time.T)
            throw config_error("bump crossing time X0 M / p_H = " + std::to_string(t_star) +
                               " lies outside the run (time.T = " + std::to_string(time.T) + ")");
    }

    if (!(vis_lo < vis_hi) || vis_lo < -grid.H || vis_hi > grid.H)
        throw config_error("visibility window [" + std::to_string(vis_lo) + ", " +
                           std::to_string(vis_hi) + "] must lie inside the grid");

    if (schedule.N > 0) {
        const std::size_t last = (schedule.N - 1) * schedule.interval_steps;
        if (last > time.L)
            throw config_error("collision schedule extends past the run: last collision at step " +
                               std::to_string(last) + " > time.L = " + std::to_string(time.L));
    }

    for (const std::size_t s : snapshots)
        if (s > time.L)
            throw config_error("snapshot step " + std::to_string(s) + " > time.L = " +
                               std::to_string(time.L));

    if (oracle.x_window > 0.0) {
        const double tmax = oracle.taus.back();
        const double need =
            12.0 + (std::abs(oracle.packet.p) + 5.0 / oracle.packet.sigma + 50.0) * tmax;
        if (oracle.x_window < need)
            throw config_error("oracle.x_window = " + std::to_string(oracle.x_window) +
                               " too small for tau = " + std::to_string(tmax) +
                               "; needs at least " + std::to_string(need));
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;

    const bool blank =
        std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); });
    if (!blank) {
        json j;
        try {
            j = json::parse(text);
            expect_keys(j, "config",
                        {"grid", "time", "mass", "heavy", "packet", "potential", "schedule",
                         "quadrature", "oracle", "visibility", "output", "snapshots"});
            if (j.contains("grid")) {
                const auto& g = j.at("grid");
                expect_keys(g, "grid", {"H", "J"});
                read_if(g, "H", cfg.grid.H);
                read_if(g, "J", cfg.grid.J);
            }
            if (j.contains("time")) {
                const auto& t = j.at("time");
                expect_keys(t, "time", {"T", "L"});
                read_if(t, "T", cfg.time.T);
                read_if(t, "L", cfg.time.L);
            }
            read_if(j, "mass", cfg.mass);
            if (j.contains("heavy")) {
                const auto& h = j.at("heavy");
                expect_keys(h, "heavy", {"X0", "sigma_H", "p_H"});
                read_if(h, "X0", cfg.heavy.X0);
                read_if(h, "sigma_H", cfg.heavy.sigma_H);
                read_if(h, "p_H", cfg.heavy.p_H);
            }
            if (j.contains("packet")) cfg.packet = parse_packet(j.at("packet"), "packet");
            if (j.contains("potential")) cfg.potential = parse_potential(j.at("potential"));
            if (j.contains("schedule")) {
                const auto& s = j.at("schedule");
                expect_keys(s, "schedule", {"N", "interval_steps", "rescale"});
                read_if(s, "N", cfg.schedule.N);
                read_if(s, "interval_steps", cfg.schedule.interval_steps);
                read_if(s, "rescale", cfg.schedule.rescale);
            }
            if (j.contains("quadrature")) {
                const auto& q = j.at("quadrature");
                expect_keys(q, "quadrature", {"n_k", "bvp_points"});
                read_if(q, "n_k", cfg.n_k);
                read_if(q, "bvp_points", cfg.bvp_points);
            }
            if (j.contains("oracle")) {
                const auto& o = j.at("oracle");
                expect_keys(o, "oracle", {"alpha", "taus", "packet", "x_window", "n_x"});
                read_if(o, "alpha", cfg.oracle.alpha);
                if (o.contains("taus")) cfg.oracle.taus = o.at("taus").get<std::vector<double>>();
                if (o.contains("packet"))
                    cfg.oracle.packet = parse_packet(o.at("packet"), "oracle.packet");
                read_if(o, "x_window", cfg.oracle.x_window);
                read_if(o, "n_x", cfg.oracle.n_x);
            }
            if (j.contains("visibility")) {
                const auto& v = j.at("visibility");
                expect_keys(v, "visibility", {"lo", "hi"});
                read_if(v, "lo", cfg.vis_lo);
                read_if(v, "hi", cfg.vis_hi);
            }
            if (j.contains("output")) {
                const auto& o = j.at("output");
                expect_keys(o, "output", {"dir"});
                read_if(o, "dir", cfg.out_dir);
            }
            if (j.contains("snapshots"))
                cfg.snapshots = j.at("snapshots").get<std::vector<std::size_t>>();
        } catch (const json::exception& e) {
            throw config_error(std::string("config: ") + e.what());
        }
    }

    cfg.validate();
    return cfg;
}

std::string canonical_config_json(const RunConfig& cfg) {
    json j;
    j["grid"] = {{"H", cfg.grid.H}, {"J", cfg.grid.J}};
    j["time"] = {{"T", cfg.time.T}, {"L", cfg.time.L}};
    j["mass"] = cfg.mass;
    j["heavy"] = {{"X0", cfg.heavy.X0}, {"sigma_H", cfg.heavy.sigma_H}, {"p_H", cfg.heavy.p_H}};
    j["packet"] = packet_json(cfg.packet);
    j["potential"] = potential_json(cfg.potential);
    j["schedule"] = {{"N", cfg.schedule.N},
                     {"interval_steps", cfg.schedule.interval_steps},
                     {"rescale", cfg.schedule.rescale}};
    j["quadrature"] = {{"n_k", cfg.n_k}, {"bvp_points", cfg.bvp_points}};
    j["oracle"] = {{"alpha", cfg.oracle.alpha},
                   {"taus", cfg.oracle.taus},
                   {"packet", packet_json(cfg.oracle.packet)},
                   {"x_window", cfg.oracle.x_window},
                   {"n_x", cfg.oracle.n_x}};
    j["visibility"] = {{"lo", cfg.vis_lo}, {"hi", cfg.vis_hi}};
    j["output"] = {{"dir", cfg.out_dir}};
    j["snapshots"] = cfg.snapshots;
    return j.dump();  // object keys serialize sorted
}

}  // namespace decoh
