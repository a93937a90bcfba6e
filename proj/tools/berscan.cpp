// berscan: quasifuchsian-region raster, Fuchsian-center finder, and
// single-point queries for the square once-punctured torus.
//
// Exit codes: 0 ok, 1 IO failure, 2 usage error, 3 verification failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "berscan/io.hpp"
#include "berscan/scan.hpp"
#include "berscan/verify.hpp"
#include "berscan/version.hpp"

namespace {

using berscan::Complex;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitVerify = 3;

bool parse_complex(const std::string& text, Complex& out) {
    const auto comma = text.find(',');
    try {
        std::size_t used = 0;
        if (comma == std::string::npos) {
            const double re = std::stod(text, &used);
            if (used != text.size()) return false;
            out = Complex{re, 0.0};
            return true;
        }
        const std::string re_part = text.substr(0, comma);
        const std::string im_part = text.substr(comma + 1);
        const double re = std::stod(re_part, &used);
        if (used != re_part.size()) return false;
        const double im = std::stod(im_part, &used);
        if (used != im_part.size()) return false;
        out = Complex{re, im};
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

bool parse_size(const std::string& text, double& w, double& h) {
    const auto x = text.find('x');
    try {
        std::size_t used = 0;
        if (x == std::string::npos) {
            const double s = std::stod(text, &used);
            if (used != text.size() || !(s > 0)) return false;
            w = h = s;
            return true;
        }
        const std::string ws = text.substr(0, x);
        const std::string hs = text.substr(x + 1);
        w = std::stod(ws, &used);
        if (used != ws.size()) return false;
        h = std::stod(hs, &used);
        if (used != hs.size()) return false;
        return w > 0 && h > 0;
    } catch (const std::exception&) {
        return false;
    }
}

struct WindowFlags {
    std::string center = "0,0";
    std::string size;
    int resolution = 0;
    int max_depth = 0;
    double growth_bound = 0.0;
    double ode_tol = 0.0;
    int workers = -1;
};

void add_window_flags(CLI::App* cmd, WindowFlags& f, int default_res) {
    f.resolution = default_res;
    cmd->add_option("--center", f.center, "Window center as re,im")
        ->capture_default_str();
    cmd->add_option("--size", f.size,
                    "Window size as WxH (or one number for a square)");
    cmd->add_option("--res", f.resolution, "Pixels per side")
        ->capture_default_str();
    cmd->add_option("--max-depth", f.max_depth,
                    "Farey search depth of the discreteness test");
    cmd->add_option("--growth-bound", f.growth_bound,
                    "Escape threshold of the discreteness test");
    cmd->add_option("--tol", f.ode_tol, "ODE integration tolerance");
    cmd->add_option("--workers", f.workers, "Worker thread count");
}

// Plain key = value config file ('#' comments).  Command-line flags win
// over file entries; the BERSCAN_WORKERS environment variable applies
// only when neither mentions the worker count.
int apply_config_file(const std::string& path, CLI::App* cmd, WindowFlags& f,
                      std::string* out, std::string* stats) {
    std::ifstream is(path);
    if (!is) {
        std::cerr << "cannot read config file '" << path << "'\n";
        return kExitIo;
    }
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string()
                                          : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << path << ":" << lineno << ": expected key = value\n";
            return kExitUsage;
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto flag_given = [&](const char* name) {
            return cmd->count(name) > 0;
        };
        try {
            if (key == "center") {
                if (!flag_given("--center")) f.center = value;
            } else if (key == "size") {
                if (!flag_given("--size")) f.size = value;
            } else if (key == "res") {
                if (!flag_given("--res")) f.resolution = std::stoi(value);
            } else if (key == "max-depth" || key == "max_depth") {
                if (!flag_given("--max-depth")) f.max_depth = std::stoi(value);
            } else if (key == "growth-bound" || key == "growth_bound") {
                if (!flag_given("--growth-bound"))
                    f.growth_bound = std::stod(value);
            } else if (key == "tol") {
                if (!flag_given("--tol")) f.ode_tol = std::stod(value);
            } else if (key == "workers") {
                if (!flag_given("--workers")) f.workers = std::stoi(value);
            } else if (key == "out" && out != nullptr) {
                if (!flag_given("--out")) *out = value;
            } else if (key == "stats" && stats != nullptr) {
                if (!flag_given("--stats")) *stats = value;
            } else {
                std::cerr << path << ":" << lineno << ": unknown key '" << key
                          << "'\n";
                return kExitUsage;
            }
        } catch (const std::exception&) {
            std::cerr << path << ":" << lineno << ": bad value for '" << key
                      << "'\n";
            return kExitUsage;
        }
    }
    return kExitOk;
}

void apply_worker_env(const CLI::App* cmd, const WindowFlags& f,
                      berscan::RasterConfig& cfg) {
    if (cmd->count("--workers") > 0 || f.workers >= 0) return;
    if (const char* env = std::getenv("BERSCAN_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w > 0) cfg.workers = w;
        } catch (const std::exception&) {
        }
    }
}

// Flags override the config file; missing entries keep library defaults.
int apply_window_flags(const WindowFlags& f, berscan::RasterConfig& cfg,
                       const std::string& flag_owner) {
    if (!parse_complex(f.center, cfg.center)) {
        std::cerr << flag_owner << ": --center expects re,im, got '"
                  << f.center << "'\n";
        return kExitUsage;
    }
    if (!f.size.empty() && !parse_size(f.size, cfg.width, cfg.height)) {
        std::cerr << flag_owner << ": --size expects WxH with positive "
                  << "entries, got '" << f.size << "'\n";
        return kExitUsage;
    }
    if (f.resolution < 2) {
        std::cerr << flag_owner << ": --res must be at least 2, got "
                  << f.resolution << "\n";
        return kExitUsage;
    }
    cfg.resolution = f.resolution;
    if (f.max_depth < 0) {
        std::cerr << flag_owner << ": --max-depth must be positive\n";
        return kExitUsage;
    }
    if (f.max_depth > 0) cfg.bq.max_depth = f.max_depth;
    if (f.growth_bound != 0.0) {
        if (f.growth_bound < 0.0) {
            std::cerr << flag_owner << ": --growth-bound must be positive\n";
            return kExitUsage;
        }
        cfg.bq.growth_bound = f.growth_bound;
    }
    if (f.ode_tol != 0.0) {
        if (f.ode_tol < 0.0) {
            std::cerr << flag_owner << ": --tol must be positive\n";
            return kExitUsage;
        }
        cfg.holonomy.ode.tol = f.ode_tol;
    }
    if (f.workers >= 0) cfg.workers = f.workers;
    return kExitOk;
}

int write_file(const std::string& path, const std::string& data) {
    std::ofstream os(path, std::ios::binary);
    if (!os) {
        std::cerr << "cannot open '" << path << "' for writing\n";
        return kExitIo;
    }
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    os.flush();
    if (!os) {
        std::cerr << "write to '" << path << "' failed\n";
        return kExitIo;
    }
    return kExitOk;
}

int cmd_raster(CLI::App* cmd, WindowFlags wf, std::string out_path,
               std::string stats_path, const std::string& config_path) {
    if (!config_path.empty()) {
        if (const int rc = apply_config_file(config_path, cmd, wf, &out_path,
                                             &stats_path);
            rc != kExitOk)
            return rc;
    }
    berscan::RasterConfig cfg;
    if (const int rc = apply_window_flags(wf, cfg, "raster"); rc != kExitOk)
        return rc;
    apply_worker_env(cmd, wf, cfg);
    const berscan::QcFamily family;
    const berscan::RasterResult img = berscan::raster(family, cfg);

    std::string image_bytes;
    {
        std::ostringstream os(std::ios::binary);
        if (out_path.size() >= 4 &&
            out_path.substr(out_path.size() - 4) == ".png")
            berscan::write_png(os, img);
        else
            berscan::write_ppm(os, img);
        image_bytes = os.str();
    }
    if (const int rc = write_file(out_path, image_bytes); rc != kExitOk)
        return rc;
    if (!stats_path.empty()) {
        if (const int rc = write_file(
                stats_path, berscan::raster_stats_json(cfg, img.stats));
            rc != kExitOk)
            return rc;
    }
    std::cerr << "raster " << cfg.resolution << "x" << cfg.resolution
              << " done in " << img.stats.wall_seconds << " s; counts"
              << " gray=" << img.stats.counts[0]
              << " black=" << img.stats.counts[1]
              << " white=" << img.stats.counts[2]
              << " amber=" << img.stats.counts[3] << "\n";
    return kExitOk;
}

int cmd_centers(CLI::App* cmd, WindowFlags wf, std::string out_path,
                const std::string& config_path) {
    if (!config_path.empty()) {
        if (const int rc =
                apply_config_file(config_path, cmd, wf, &out_path, nullptr);
            rc != kExitOk)
            return rc;
    }
    berscan::RasterConfig cfg;
    if (const int rc = apply_window_flags(wf, cfg, "centers"); rc != kExitOk)
        return rc;
    apply_worker_env(cmd, wf, cfg);
    const berscan::QcFamily family;
    const auto centers = berscan::find_centers(family, cfg);
    if (!out_path.empty()) {
        if (const int rc = write_file(out_path, berscan::centers_json(centers));
            rc != kExitOk)
            return rc;
    } else {
        std::cout << berscan::centers_json(centers);
    }
    std::cout << centers.size() << "\n";
    return kExitOk;
}

int cmd_trace_at(const std::string& c_text, const WindowFlags& wf) {
    Complex c;
    if (!parse_complex(c_text, c)) {
        std::cerr << "trace-at: cannot parse complex value '" << c_text
                  << "'\n";
        return kExitUsage;
    }
    berscan::RasterConfig cfg;
    cfg.resolution = 16;
    if (wf.max_depth > 0) cfg.bq.max_depth = wf.max_depth;
    if (wf.ode_tol > 0.0) cfg.holonomy.ode.tol = wf.ode_tol;
    const berscan::QcFamily family;
    const berscan::HolonomyResult h =
        berscan::holonomy(family, berscan::SlicePoint{c}, cfg.holonomy);
    berscan::PointClassification pc =
        berscan::classify_point(family, c, cfg);
    std::optional<berscan::Slope> witness;
    try {
        const berscan::BqVerdict v = berscan::bq_test(h.character, cfg.bq);
        witness = v.witness;
    } catch (const berscan::NotRelativeError&) {
    }
    std::cout << berscan::trace_at_json(c, pc, h.error_estimate, witness);
    return kExitOk;
}

int cmd_verify(const std::string& suite, double theta_perturb) {
    berscan::VerifyOptions opts;
    opts.suite = suite;
    opts.theta_perturb = theta_perturb;
    const auto suites = berscan::run_verify(opts);
    if (suites.empty()) {
        std::cerr << "verify: unknown suite '" << suite << "'\n";
        return kExitUsage;
    }
    bool all_ok = true;
    std::vector<std::string> failing;
    for (const auto& s : suites) {
        const bool ok = s.passed();
        all_ok = all_ok && ok;
        std::cout << (ok ? "PASS" : "FAIL") << "  " << s.name << "\n";
        for (const auto& c : s.checks) {
            std::cout << "  " << (c.passed ? "pass" : "FAIL") << "  "
                      << c.name;
            if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
            std::cout << "\n";
            if (!c.passed) failing.push_back(s.name + ": " + c.name);
        }
    }
    if (!all_ok) {
        std::cerr << "failing invariants:\n";
        for (const auto& f : failing) std::cerr << "  " << f << "\n";
        return kExitVerify;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Holonomy explorer for the square once-punctured torus"};
    app.require_subcommand(1);

    WindowFlags raster_flags;
    std::string raster_out = "raster.ppm";
    std::string raster_stats;
    std::string raster_config;
    CLI::App* raster_cmd = app.add_subcommand(
        "raster", "Rasterize the quasifuchsian region and its centers");
    add_window_flags(raster_cmd, raster_flags, 400);
    raster_cmd->add_option("--out", raster_out, "Output image (.ppm or .png)")
        ->capture_default_str();
    raster_cmd->add_option("--stats", raster_stats, "Stats JSON path");
    raster_cmd->add_option("--config", raster_config,
                           "Config file with key = value lines; flags win");

    WindowFlags centers_flags;
    std::string centers_out;
    std::string centers_config;
    CLI::App* centers_cmd =
        app.add_subcommand("centers", "Locate and validate Fuchsian centers");
    add_window_flags(centers_cmd, centers_flags, 400);
    centers_cmd->add_option("--out", centers_out, "Centers JSON path");
    centers_cmd->add_option("--config", centers_config,
                            "Config file with key = value lines; flags win");

    WindowFlags trace_flags;
    std::string trace_c;
    CLI::App* trace_cmd =
        app.add_subcommand("trace-at", "Character and verdict at one c");
    trace_cmd->add_option("--c", trace_c, "Slice coordinate as re,im")
        ->required();
    trace_cmd->add_option("--max-depth", trace_flags.max_depth,
                          "Farey search depth");
    trace_cmd->add_option("--tol", trace_flags.ode_tol, "ODE tolerance");

    std::string verify_suite;
    double theta_perturb = 0.0;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the module invariant suites");
    verify_cmd->add_option("--suite", verify_suite,
                           "Run a single suite (moebius, char, elliptic, "
                           "holonomy, discreteness, scan)");
    verify_cmd
        ->add_option("--theta-perturb", theta_perturb,
                     "Perturb the pole normalization (negative control)")
        ->group("");  // hidden

    CLI::App* version_cmd = app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kExitOk;  // --help
        std::cerr << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (raster_cmd->parsed())
            return cmd_raster(raster_cmd, raster_flags, raster_out,
                              raster_stats, raster_config);
        if (centers_cmd->parsed())
            return cmd_centers(centers_cmd, centers_flags, centers_out,
                               centers_config);
        if (trace_cmd->parsed()) return cmd_trace_at(trace_c, trace_flags);
        if (verify_cmd->parsed())
            return cmd_verify(verify_suite, theta_perturb);
        if (version_cmd->parsed()) {
            std::cout << "berscan " << berscan::kVersion << "\n";
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    }
    return kExitUsage;
}
