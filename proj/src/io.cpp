#include "decoh/io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace decoh {

std::string fmt_sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw config_error("cannot create output directory '" + dir + "': " + ec.message());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for writing");
    f.write(content.data(), std::streamsize(content.size()));
    if (!f) throw config_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw config_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::uint64_t fnv1a(std::string_view data) {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : data) {
        h ^= std::uint64_t(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a_hex(std::string_view data) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a(data)));
    return buf;
}

void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::string& canonical_config, const std::vector<CheckResult>& checks,
                    const std::vector<std::pair<std::string, double>>& timings_s,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["config_hash"] = fnv1a_hex(canonical_config);
    j["config"] = nlohmann::json::parse(canonical_config);
    nlohmann::json cl = nlohmann::json::array();
    for (const auto& c : checks) cl.push_back({{"name", c.name}, {"pass", c.pass}});
    j["checks"] = cl;
    nlohmann::json tm;
    for (const auto& t : timings_s) tm[t.first] = t.second;
    j["timings_seconds"] = tm;
    j["outputs"] = outputs;
    write_text_file(out_dir + "/manifest.json", j.dump(2) + "\n");
}

namespace {

const char* kCommonHeader =
    "set datafile separator ','\n"
    "set terminal pngcairo size 900,600\n";

// Numeric step suffix of names like density_t1839.csv, for sorted overlays.
long step_of(const std::string& name) {
    const auto t = name.find_last_of('t');
    if (t == std::string::npos) return -1;
    return std::atol(name.substr(t + 1).c_str());
}

std::string join_sorted_by_step(std::vector<std::string> names) {
    std::sort(names.begin(), names.end(),
              [](const std::string& a, const std::string& b) { return step_of(a) < step_of(b); });
    std::string s;
    for (const auto& n : names) {
        if (!s.empty()) s += ' ';
        s += n;
    }
    return s;
}

}  // namespace

void emit_plot_scripts(const std::string& out_dir, const std::vector<std::string>& csv_names) {
    const auto has = [&](const std::string& n) {
        return std::find(csv_names.begin(), csv_names.end(), n) != csv_names.end();
    };
    std::vector<std::string> density_files, rho_files;
    for (const auto& n : csv_names) {
        if (n.rfind("density_t", 0) == 0) density_files.push_back(n);
        if (n.rfind("rho_abs_t", 0) == 0) rho_files.push_back(n);
    }

    if (has("amplitudes.csv")) {
        std::string s = kCommonHeader;
        s += "set output 'amplitudes.png'\n"
             "set xlabel 'k'\n"
             "set ylabel '|r_k|^2'\n"
             "plot 'amplitudes.csv' every ::1 using 1:6 with lines title 'reflection "
             "probability'\n";
        write_text_file(out_dir + "/plot_amplitudes.gp", s);
    }
    if (has("kernel_antidiag.csv")) {
        std::string s = kCommonHeader;
        s += "set output 'kernel_antidiag.png'\n"
             "set xlabel 'X'\n"
             "set ylabel '|I(X,-X)|'\n"
             "set yrange [0:1.05]\n"
             "plot 'kernel_antidiag.csv' every ::1 using 1:2 with lines title 'antidiagonal'\n";
        write_text_file(out_dir + "/plot_kernel_antidiag.gp", s);
    }
    if (has("kernel.csv")) {
        std::string s =
            "set datafile separator ','\n"
            "set terminal pngcairo size 900,800\n"
            "set output 'kernel_heatmap.png'\n"
            "set view map\n"
            "set xlabel 'X'\n"
            "set ylabel 'X_prime'\n"
            "splot 'kernel.csv' every ::1 using 1:2:5 with points pt 5 ps 0.5 palette notitle\n";
        write_text_file(out_dir + "/plot_kernel_heatmap.gp", s);
    }
    if (!density_files.empty()) {
        std::string s = kCommonHeader;
        s += "set output 'density.png'\n"
             "set xlabel 'X'\n"
             "set ylabel 'position density'\n"
             "plot ";
        std::vector<std::string> sorted = density_files;
        std::sort(sorted.begin(), sorted.end(), [](const std::string& a, const std::string& b) {
            return step_of(a) < step_of(b);
        });
        for (std::size_t i = 0; i < sorted.size(); ++i) {
            if (i) s += ", \\\n     ";
            s += "'" + sorted[i] + "' every ::1 using 1:2 with lines title 'step " +
                 std::to_string(step_of(sorted[i])) + "'";
        }
        s += "\n";
        write_text_file(out_dir + "/plot_density.gp", s);
    }
    if (!rho_files.empty()) {
        std::string s =
            "set datafile separator ','\n"
            "set terminal pngcairo size 900,800\n"
            "set view map\n"
            "set xlabel 'X'\n"
            "set ylabel 'X_prime'\n";
        s += "do for [f in \"" + join_sorted_by_step(rho_files) + "\"] {\n"
             "  set output f[1:strlen(f)-4].'.png'\n"
             "  splot f every ::1 using 1:2:3 with points pt 5 ps 0.5 palette notitle\n"
             "}\n";
        write_text_file(out_dir + "/plot_rho_heatmaps.gp", s);
    }
    if (has("timeseries.csv")) {
        std::string s = kCommonHeader;
        s += "set output 'timeseries.png'\n"
             "set xlabel 't'\n"
             "set ylabel 'fringe visibility'\n"
             "set y2label 'momentum'\n"
             "set y2tics\n"
             "set yrange [0:1.05]\n"
             "plot 'timeseries.csv' every ::1 using 2:7 with lines title 'visibility', \\\n"
             "     'timeseries.csv' every ::1 using 2:5 axes x1y2 with lines title 'momentum'\n";
        write_text_file(out_dir + "/plot_timeseries.gp", s);
    }
    if (has("oracle_convergence.csv")) {
        std::string s = kCommonHeader;
        s += "set output 'oracle_convergence.png'\n"
             "set logscale xy\n"
             "set xlabel 'tau'\n"
             "set ylabel 'L2 error'\n"
             "plot 'oracle_convergence.csv' every ::1 using 1:2 with linespoints title "
             "'finite-time vs closed form'\n";
        write_text_file(out_dir + "/plot_oracle.gp", s);
    }
}

}  // namespace decoh
