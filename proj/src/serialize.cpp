#include "relaydmt/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace relaydmt {

using nlohmann::json;

namespace {

const char* cut_name(Cut cut) { return cut == Cut::destination ? "dest" : "source"; }

json corner_array(const PiecewiseLinearCurve& curve) {
    json arr = json::array();
    for (const auto& c : curve.corners()) arr.push_back({{"r", c.r}, {"d", c.d}});
    return arr;
}

json config_json(const AntennaConfig& cfg) {
    return {{"source", cfg.source}, {"relay", cfg.relay}, {"dest", cfg.dest}};
}

json point_json(const EstimatePoint& pt) {
    return {{"snr_db", pt.snr_db},   {"p_linear", pt.p_linear}, {"outage", pt.estimate},
            {"ci_low", pt.ci_low},   {"ci_high", pt.ci_high},   {"events", pt.events},
            {"trials", pt.trials}};
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) return "0";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string curve_csv(const PiecewiseLinearCurve& curve) {
    std::string out = "r,d\n";
    for (const auto& c : curve.corners())
        out += format_double(c.r) + "," + format_double(c.d) + "\n";
    return out;
}

std::string curve_json(const std::string& mode, const AntennaConfig& cfg,
                       const PiecewiseLinearCurve& curve) {
    json j = {{"mode", mode}, {"config", config_json(cfg)}, {"corners", corner_array(curve)}};
    return j.dump(2) + "\n";
}

std::string curves_svg(const std::vector<std::pair<std::string, PiecewiseLinearCurve>>& curves) {
    const double width = 640, height = 480;
    const double left = 60, right = 500, top = 30, bottom = 420;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                    "#8c564b"};

    double rmax = 1, dmax = 1;
    for (const auto& [label, curve] : curves) {
        rmax = std::max(rmax, curve.r_max());
        for (const auto& c : curve.corners()) dmax = std::max(dmax, c.d);
    }
    auto xm = [&](double r) { return left + (right - left) * r / rmax; };
    auto ym = [&](double d) { return bottom - (bottom - top) * d / dmax; };

    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width << " " << height
      << "\" width=\"" << width << "\" height=\"" << height << "\">\n";
    s << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    // axes
    s << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
      << bottom << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
      << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 40
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
         "multiplexing gain r</text>\n";
    s << "<text x=\"18\" y=\"" << (top + bottom) / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\" "
         "transform=\"rotate(-90 18 "
      << (top + bottom) / 2 << ")\">diversity gain d</text>\n";

    // integer ticks
    for (int r = 0; r <= (int)std::floor(rmax + 1e-9); ++r) {
        s << "<line x1=\"" << xm(r) << "\" y1=\"" << bottom << "\" x2=\"" << xm(r) << "\" y2=\""
          << bottom + 6 << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << xm(r) << "\" y=\"" << bottom + 22
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << r
          << "</text>\n";
    }
    int dticks = std::max(1, (int)std::floor(dmax / 4));
    for (int d = 0; d <= (int)std::floor(dmax + 1e-9); d += dticks) {
        s << "<line x1=\"" << left - 6 << "\" y1=\"" << ym(d) << "\" x2=\"" << left << "\" y2=\""
          << ym(d) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << left - 10 << "\" y=\"" << ym(d) + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << d
          << "</text>\n";
    }

    for (std::size_t i = 0; i < curves.size(); ++i) {
        const auto& [label, curve] = curves[i];
        const char* color = palette[i % (sizeof palette / sizeof *palette)];
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
        for (const auto& c : curve.corners()) s << xm(c.r) << "," << ym(c.d) << " ";
        s << "\"/>\n";
        for (const auto& c : curve.corners())
            s << "<circle cx=\"" << xm(c.r) << "\" cy=\"" << ym(c.d) << "\" r=\"3.5\" fill=\""
              << color << "\"/>\n";
        double ly = top + 20 * double(i);
        s << "<line x1=\"" << right + 14 << "\" y1=\"" << ly << "\" x2=\"" << right + 38
          << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        s << "<text x=\"" << right + 44 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"13\">" << label << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string solve_json(const DiversityProgram& prog, double r, const SolverResult& result) {
    json hinges = json::array();
    for (const auto& [j, k] : result.active_hinges) hinges.push_back({j, k});
    json j = {{"value", result.value},
              {"alphas", result.point.alphas},
              {"betas", result.point.betas},
              {"active_hinges", hinges},
              {"cut", cut_name(prog.cut)},
              {"r", r},
              {"t", prog.t}};
    return j.dump(2) + "\n";
}

std::string outage_csv(const EstimateSeries& series, const SlopeFit* fit, double reference) {
    std::string out = "snr_db,p_linear,outage,ci_low,ci_high,events\n";
    for (const auto& pt : series.points) {
        out += format_double(pt.snr_db) + "," + format_double(pt.p_linear) + "," +
               format_double(pt.estimate) + "," + format_double(pt.ci_low) + "," +
               format_double(pt.ci_high) + "," + std::to_string(pt.events) + "\n";
    }
    if (fit) {
        out += "slope," + format_double(fit->diversity) + ",stderr," +
               format_double(fit->stderr_) + ",reference," + format_double(reference) + "\n";
    }
    return out;
}

std::string outage_json(const OutageSpec& spec, const EstimateSeries& series,
                        const SlopeFit* fit, double reference) {
    json points = json::array();
    for (const auto& pt : series.points) points.push_back(point_json(pt));
    json j = {{"config", config_json(spec.config)},
              {"cut", cut_name(spec.cut)},
              {"t", spec.t},
              {"r", spec.r},
              {"trials", spec.trials},
              {"seed", spec.seed},
              {"points", points}};
    if (fit) {
        j["fit"] = {{"slope", fit->diversity},
                    {"stderr", fit->stderr_},
                    {"points_used", fit->points_used},
                    {"reference", reference}};
    } else {
        j["fit"] = nullptr;
    }
    return j.dump(2) + "\n";
}

std::string spherical_csv(const SphericalRun& run) {
    std::string out;
    if (run.predicted.super_polynomial) {
        out = "p,mean,stderr,bound,pass\n";
        for (const auto& pt : run.suppol) {
            out += format_double(pt.p) + "," + format_double(pt.mean) + "," +
                   format_double(pt.stderr_) + "," + format_double(pt.bound) + "," +
                   (pt.pass ? "true" : "false") + "\n";
        }
        return out;
    }
    out = "p,mean,stderr\n";
    for (std::size_t i = 0; i < run.powers.size(); ++i) {
        out += format_double(run.powers[i]) + "," + format_double(run.estimates[i].mean) + "," +
               format_double(run.estimates[i].stderr_) + "\n";
    }
    if (run.has_fit) {
        out += "fit," + format_double(run.fitted_slope) + "," +
               format_double(run.predicted.value) + "\n";
    }
    return out;
}

std::string spherical_json(const SphericalRun& run) {
    json j;
    j["super_polynomial"] = run.predicted.super_polynomial;
    if (run.predicted.super_polynomial)
        j["predicted_exponent"] = nullptr;
    else
        j["predicted_exponent"] = run.predicted.value;
    json points = json::array();
    if (run.predicted.super_polynomial) {
        for (const auto& pt : run.suppol)
            points.push_back({{"p", pt.p},
                              {"mean", pt.mean},
                              {"stderr", pt.stderr_},
                              {"bound", pt.bound},
                              {"pass", pt.pass}});
    } else {
        for (std::size_t i = 0; i < run.powers.size(); ++i)
            points.push_back({{"p", run.powers[i]},
                              {"mean", run.estimates[i].mean},
                              {"stderr", run.estimates[i].stderr_}});
    }
    j["points"] = points;
    if (run.has_fit) {
        j["fitted_slope"] = run.fitted_slope;
        j["fit_stderr"] = run.fit_stderr;
    }
    return j.dump(2) + "\n";
}

std::string verify_table(const std::vector<VerifyCheck>& checks) {
    std::size_t name_w = 4;
    for (const auto& c : checks) name_w = std::max(name_w, c.name.size());
    std::string out;
    int failed = 0;
    for (const auto& c : checks) {
        std::string row = c.name;
        row.resize(name_w + 2, ' ');
        row += c.pass ? "pass" : "FAIL";
        if (!c.detail.empty()) row += "  " + c.detail;
        out += row + "\n";
        if (!c.pass) ++failed;
    }
    if (failed == 0)
        out += "all " + std::to_string(checks.size()) + " checks passed\n";
    else
        out += std::to_string(failed) + " of " + std::to_string(checks.size()) +
               " checks failed\n";
    return out;
}

std::string verify_json(const std::vector<VerifyCheck>& checks) {
    json arr = json::array();
    bool all = true;
    for (const auto& c : checks) {
        arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    json j = {{"checks", arr}, {"all_pass", all}};
    return j.dump(2) + "\n";
}

}  // namespace relaydmt
