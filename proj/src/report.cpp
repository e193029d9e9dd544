#include "bsde/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "bsde/errors.hpp"

namespace bsde {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_alpha(double alpha) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", alpha);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

double parse_double(const std::string& s, const std::filesystem::path& file) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str()) {
        throw NumericalError("malformed number '" + s + "' in " + file.string());
    }
    return v;
}

}  // namespace

std::string report_stem(const ConvergenceReport& report) {
    return report.problem + "_" + fmt_alpha(report.alpha);
}

void write_report_csv(const ConvergenceReport& report, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw NumericalError("cannot open for writing: " + file.string());
    out << "N,h,err_y,err_z,runtime_s\n";
    for (const ConvergenceRow& row : report.rows) {
        out << row.num_steps << ',' << fmt(row.h) << ',' << fmt(row.err_y) << ','
            << fmt(row.err_z) << ',' << fmt(row.wall_seconds) << '\n';
    }
    out << "CR_y," << (report.cr_y ? fmt(*report.cr_y) : "NA") << '\n';
    out << "CR_z," << (report.cr_z ? fmt(*report.cr_z) : "NA") << '\n';
    if (!out.flush()) throw NumericalError("write failed: " + file.string());
}

ConvergenceReport read_report_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw NumericalError("cannot open for reading: " + file.string());
    std::string line;
    if (!std::getline(in, line) || line != "N,h,err_y,err_z,runtime_s") {
        throw NumericalError("unexpected CSV header in " + file.string());
    }
    ConvergenceReport report;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv(line);
        if (cells.size() == 2 && (cells[0] == "CR_y" || cells[0] == "CR_z")) {
            std::optional<double> cr;
            if (cells[1] != "NA") cr = parse_double(cells[1], file);
            (cells[0] == "CR_y" ? report.cr_y : report.cr_z) = cr;
            continue;
        }
        if (cells.size() != 5) {
            throw NumericalError("unexpected CSV row in " + file.string() + ": " + line);
        }
        ConvergenceRow row;
        row.num_steps = static_cast<int>(parse_double(cells[0], file));
        row.h = parse_double(cells[1], file);
        row.err_y = parse_double(cells[2], file);
        row.err_z = parse_double(cells[3], file);
        row.wall_seconds = parse_double(cells[4], file);
        report.rows.push_back(row);
    }
    return report;
}

namespace {

struct LogPoint {
    double lx, ly;
};

struct Fit {
    double slope = 0.0, intercept = 0.0;
    bool valid = false;
};

Fit fit_points(const std::vector<LogPoint>& pts) {
    Fit f;
    if (pts.size() < 2) return f;
    double mx = 0.0, my = 0.0;
    for (const auto& p : pts) {
        mx += p.lx;
        my += p.ly;
    }
    mx /= pts.size();
    my /= pts.size();
    double sxx = 0.0, sxy = 0.0;
    for (const auto& p : pts) {
        sxx += (p.lx - mx) * (p.lx - mx);
        sxy += (p.lx - mx) * (p.ly - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.valid = true;
    return f;
}

}  // namespace

void write_report_svg(const ConvergenceReport& report, const std::filesystem::path& file) {
    std::vector<LogPoint> py, pz;
    for (const ConvergenceRow& row : report.rows) {
        if (row.err_y > 0.0) py.push_back({std::log10(row.h), std::log10(row.err_y)});
        if (row.err_z > 0.0) pz.push_back({std::log10(row.h), std::log10(row.err_z)});
    }
    if (py.empty() && pz.empty()) {
        throw NumericalError("no positive errors to plot for " + report_stem(report));
    }

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto* series : {&py, &pz}) {
        for (const auto& p : *series) {
            xmin = std::min(xmin, p.lx);
            xmax = std::max(xmax, p.lx);
            ymin = std::min(ymin, p.ly);
            ymax = std::max(ymax, p.ly);
        }
    }
    xmin -= 0.15;
    xmax += 0.15;
    ymin -= 0.4;
    ymax += 0.4;

    constexpr double W = 640, H = 480, ML = 70, MR = 20, MT = 30, MB = 50;
    const auto X = [&](double lx) { return ML + (lx - xmin) / (xmax - xmin) * (W - ML - MR); };
    const auto Y = [&](double ly) { return H - MB - (ly - ymin) / (ymax - ymin) * (H - MT - MB); };

    std::ofstream out(file);
    if (!out) throw NumericalError("cannot open for writing: " + file.string());
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes and power-of-ten ticks
    out << "<line x1=\"" << ML << "\" y1=\"" << H - MB << "\" x2=\"" << W - MR << "\" y2=\""
        << H - MB << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << ML << "\" y1=\"" << MT << "\" x2=\"" << ML << "\" y2=\"" << H - MB
        << "\" stroke=\"black\"/>\n";
    for (int e = static_cast<int>(std::ceil(xmin)); e <= static_cast<int>(std::floor(xmax)); ++e) {
        const double x = X(e);
        out << "<line x1=\"" << x << "\" y1=\"" << H - MB << "\" x2=\"" << x << "\" y2=\""
            << H - MB + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << x << "\" y=\"" << H - MB + 20
            << "\" font-size=\"12\" text-anchor=\"middle\">1e" << e << "</text>\n";
    }
    for (int e = static_cast<int>(std::ceil(ymin)); e <= static_cast<int>(std::floor(ymax)); ++e) {
        const double y = Y(e);
        out << "<line x1=\"" << ML - 5 << "\" y1=\"" << y << "\" x2=\"" << ML << "\" y2=\"" << y
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ML - 8 << "\" y=\"" << y + 4
            << "\" font-size=\"12\" text-anchor=\"end\">1e" << e << "</text>\n";
    }
    out << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << H - 10
        << "\" font-size=\"13\" text-anchor=\"middle\">h</text>\n"
        << "<text x=\"15\" y=\"" << (MT + H - MB) / 2
        << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 15 "
        << (MT + H - MB) / 2 << ")\">error</text>\n"
        << "<text x=\"" << (ML + W - MR) / 2 << "\" y=\"" << 20
        << "\" font-size=\"14\" text-anchor=\"middle\">" << report_stem(report)
        << " (log-log)</text>\n";

    const auto draw_line = [&](const Fit& f, const char* color, const char* dash) {
        if (!f.valid) return;
        const double y1 = f.intercept + f.slope * xmin;
        const double y2 = f.intercept + f.slope * xmax;
        out << "<line x1=\"" << X(xmin) << "\" y1=\"" << Y(y1) << "\" x2=\"" << X(xmax)
            << "\" y2=\"" << Y(y2) << "\" stroke=\"" << color << "\" stroke-width=\"1.2\"";
        if (dash) out << " stroke-dasharray=\"" << dash << "\"";
        out << "/>\n";
    };

    // slope-2 baseline anchored above the widest-step point
    std::vector<LogPoint> all(py);
    all.insert(all.end(), pz.begin(), pz.end());
    double axmax = -1e300, ay = 0.0;
    for (const auto& p : all) {
        if (p.lx > axmax) {
            axmax = p.lx;
            ay = p.ly;
        }
    }
    Fit baseline{2.0, ay + 0.3 - 2.0 * axmax, true};
    draw_line(baseline, "gray", "6,4");
    draw_line(fit_points(py), "#d62728", nullptr);
    draw_line(fit_points(pz), "#1f77b4", nullptr);

    for (const auto& p : py) {
        out << "<circle cx=\"" << X(p.lx) << "\" cy=\"" << Y(p.ly)
            << "\" r=\"4\" fill=\"#d62728\"/>\n";
    }
    for (const auto& p : pz) {
        out << "<rect x=\"" << X(p.lx) - 3.5 << "\" y=\"" << Y(p.ly) - 3.5
            << "\" width=\"7\" height=\"7\" fill=\"#1f77b4\"/>\n";
    }

    const Fit fy = fit_points(py), fz = fit_points(pz);
    out << "<text x=\"" << W - MR - 10 << "\" y=\"" << MT + 20
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#d62728\">err_y";
    if (fy.valid) out << " (slope " << fmt_alpha(std::round(fy.slope * 1e4) / 1e4) << ")";
    out << "</text>\n<text x=\"" << W - MR - 10 << "\" y=\"" << MT + 38
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f77b4\">err_z";
    if (fz.valid) out << " (slope " << fmt_alpha(std::round(fz.slope * 1e4) / 1e4) << ")";
    out << "</text>\n<text x=\"" << W - MR - 10 << "\" y=\"" << MT + 56
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"gray\">slope-2 baseline</text>\n";

    out << "</svg>\n";
    if (!out.flush()) throw NumericalError("write failed: " + file.string());
}

}  // namespace bsde
