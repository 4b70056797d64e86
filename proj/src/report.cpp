#include "sortlab/report.hpp"

#include "sortlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

namespace sortlab {

namespace {

constexpr int kLabelWidth = 26;
constexpr int kCellWidth = 16;

std::string display_name(const std::string& technique) {
    std::string s = technique.empty() ? "Unknown" : technique;
    s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (const char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fixed(double v, int digits) {
    std::ostringstream s;
    s << std::fixed << std::setprecision(digits) << v;
    return s.str();
}

void require_finite(const std::vector<double>& values, const std::string& what) {
    for (const double v : values) {
        if (!std::isfinite(v)) {
            throw FormatError("non-finite value in " + what);
        }
    }
}

void require_finite(const Matrix& m, const std::string& what) {
    require_finite(std::vector<double>(m.data().begin(), m.data().end()), what);
}

class TextTable {
public:
    explicit TextTable(std::ostringstream& out) : out_(out) {}

    void title(const std::string& t) { out_ << '\n' << t << '\n'; }

    void header(const std::string& label, const std::vector<std::string>& cells) {
        row(label, cells);
        out_ << std::string(kLabelWidth + kCellWidth * cells.size(), '-') << '\n';
    }

    void row(const std::string& label, const std::vector<std::string>& cells) {
        out_ << std::left << std::setw(kLabelWidth) << label << std::right;
        for (const auto& c : cells) {
            out_ << std::setw(kCellWidth) << c;
        }
        out_ << '\n';
    }

private:
    std::ostringstream& out_;
};

std::vector<std::string> numbers(std::span<const double> values) {
    std::vector<std::string> out;
    for (const double v : values) {
        out.push_back(format_table_number(v));
    }
    return out;
}

std::string variable_label(std::size_t i) {
    return i < kVariableNames.size() ? std::string(kVariableNames[i]) : "Variable " + std::to_string(i + 1);
}

}  // namespace

std::string format_table_number(double x) {
    if (!std::isfinite(x)) {
        return "NaN";
    }
    const double mag = std::abs(x);
    if (mag != 0.0 && mag < 0.0005) {
        int exponent = static_cast<int>(std::floor(std::log10(mag)));
        double mantissa = x / std::pow(10.0, exponent);
        if (std::abs(std::round(mantissa * 1000.0)) >= 10000.0) {
            mantissa /= 10.0;
            ++exponent;
        }
        return fixed(mantissa, 3) + "E" + std::to_string(exponent);
    }
    std::string s = fixed(x, 3);
    if (s == "-0.000") {
        s = "0.000";
    }
    if (s.rfind("0.", 0) == 0) {
        s.erase(0, 1);
    } else if (s.rfind("-0.", 0) == 0) {
        s.erase(1, 1);
    }
    return s;
}

std::string render_technique_tables(const FactorModel& fm) {
    const std::string name = display_name(fm.technique);
    const std::size_t p = fm.eigenvalues.size();
    std::ostringstream out;
    TextTable t(out);

    out << "==== " << name << " (" << fm.observations << " runs, scores: " << to_string(fm.score_mode) << ") ====\n";

    t.title("Descriptive Statistics for " + name);
    t.header("", {"Mean", "Std. Deviation", "N"});
    for (std::size_t i = 0; i < fm.descriptives.mean.size(); ++i) {
        t.row(variable_label(i), {format_table_number(fm.descriptives.mean[i]),
                                  format_table_number(fm.descriptives.sd[i]), std::to_string(fm.observations)});
    }

    t.title("Correlation Matrix for " + name);
    std::vector<std::string> short_names;
    for (std::size_t i = 0; i < fm.correlation.cols(); ++i) {
        static const char* abbrev[] = {"Time", "Mem consumed", "Total mem"};
        short_names.push_back(fm.correlation.cols() == 3 ? abbrev[i] : "Var " + std::to_string(i + 1));
    }
    t.header("", short_names);
    for (std::size_t i = 0; i < fm.correlation.rows(); ++i) {
        t.row(variable_label(i), numbers(fm.correlation.row(i)));
    }

    t.title("KMO and Bartlett's Test for " + name);
    out << "Kaiser-Meyer-Olkin Measure of Sampling Adequacy.  " << format_table_number(fm.kmo.overall)
        << (fm.kmo.degenerate ? "  (degenerate: no off-diagonal correlation)" : "") << '\n';
    out << "Bartlett's Test of Sphericity  Approx. Chi-Square " << format_table_number(fm.bartlett.chi2)
        << "  df " << fm.bartlett.df << "  Sig. " << format_table_number(fm.bartlett.p_value) << '\n';

    t.title("Communalities for " + name);
    t.header("", {"Initial", "Extraction"});
    for (std::size_t i = 0; i < fm.communalities.size(); ++i) {
        t.row(variable_label(i),
              {format_table_number(fm.initial_communalities.at(i)), format_table_number(fm.communalities[i])});
    }
    out << "Extraction Method: Principal Component Analysis.\n";

    t.title("Component Score Coefficient Matrix for " + name);
    std::vector<std::string> comps;
    for (std::size_t j = 0; j < fm.score_coefficients.cols(); ++j) {
        comps.push_back(std::to_string(j + 1));
    }
    t.header("Component", comps);
    for (std::size_t i = 0; i < fm.score_coefficients.rows(); ++i) {
        t.row(variable_label(i), numbers(fm.score_coefficients.row(i)));
    }
    out << "Rotation Method: Promax with Kaiser Normalization (kappa " << fixed(fm.kappa, 1) << ").\n";

    t.title("Eigen value generated for " + name);
    t.header("Component", {"Total", "% of Variance", "Cumulative %", "Rotation SSL"});
    for (std::size_t j = 0; j < p; ++j) {
        t.row(std::to_string(j + 1),
              {format_table_number(fm.eigenvalues[j]), format_table_number(fm.percent.at(j)),
               format_table_number(fm.cumulative_percent.at(j)),
               j < fm.rotation_ssl.size() ? format_table_number(fm.rotation_ssl[j]) : ""});
    }
    if (fm.rotation_ssl.size() > 1) {
        out << "Factors are correlated; rotation sums of squared loadings do not add to a total.\n";
    }
    return out.str();
}

ChartData chart_data(const std::vector<FactorModel>& models) {
    ChartData chart;
    for (const FactorModel& fm : models) {
        chart.techniques.push_back(fm.technique);
        chart.percent.push_back(fm.percent);
        chart.factors = std::max(chart.factors, fm.percent.size());
    }
    return chart;
}

std::string render_chart_svg(const ChartData& chart) {
    constexpr double width = 640.0;
    constexpr double height = 400.0;
    constexpr double left = 60.0;
    constexpr double right = 150.0;
    constexpr double top = 40.0;
    constexpr double bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    static const char* palette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948"};

    const std::size_t groups = std::max<std::size_t>(chart.factors, 1);
    const std::size_t bars = std::max<std::size_t>(chart.techniques.size(), 1);
    const double group_w = plot_w / static_cast<double>(groups);
    const double bar_w = group_w * 0.8 / static_cast<double>(bars);

    auto y_of = [&](double pct) { return top + plot_h * (1.0 - std::clamp(pct, 0.0, 100.0) / 100.0); };

    std::ostringstream s;
    s << std::fixed << std::setprecision(2);
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "  <title>Comparison of sorting techniques based on factors considered</title>\n";
    s << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    s << "  <text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
      << "Percentage contribution of each factor</text>\n";

    for (int tick = 0; tick <= 100; tick += 20) {
        const double y = y_of(tick);
        s << "  <line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + plot_w << "\" y2=\"" << y
          << "\" stroke=\"#dddddd\"/>\n";
        s << "  <text x=\"" << left - 6 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">" << tick << "</text>\n";
    }
    s << "  <line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"#000000\"/>\n";
    s << "  <line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\" stroke=\"#000000\"/>\n";
    s << "  <text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << top + plot_h / 2 << ")\">% of variance</text>\n";

    for (std::size_t f = 0; f < chart.factors; ++f) {
        const double gx = left + group_w * static_cast<double>(f) + group_w * 0.1;
        for (std::size_t t = 0; t < chart.techniques.size(); ++t) {
            const auto& row = chart.percent[t];
            if (f >= row.size()) {
                continue;
            }
            const double pct = row[f];
            const double y = y_of(pct);
            s << "  <rect class=\"bar\" data-technique=\"" << xml_escape(chart.techniques[t]) << "\" data-factor=\""
              << f + 1 << "\" x=\"" << gx + bar_w * static_cast<double>(t) << "\" y=\"" << y << "\" width=\""
              << bar_w << "\" height=\"" << top + plot_h - y << "\" fill=\"" << palette[t % std::size(palette)]
              << "\"><title>" << xml_escape(display_name(chart.techniques[t])) << ", factor " << f + 1 << ": "
              << std::setprecision(3) << pct << std::setprecision(2) << "%</title></rect>\n";
        }
        s << "  <text x=\"" << gx + group_w * 0.4 << "\" y=\"" << top + plot_h + 18
          << "\" text-anchor=\"middle\">Factor " << f + 1 << "</text>\n";
    }

    for (std::size_t t = 0; t < chart.techniques.size(); ++t) {
        const double ly = top + 20.0 * static_cast<double>(t);
        s << "  <rect x=\"" << width - right + 20 << "\" y=\"" << ly << "\" width=\"12\" height=\"12\" fill=\""
          << palette[t % std::size(palette)] << "\"/>\n";
        s << "  <text x=\"" << width - right + 38 << "\" y=\"" << ly + 10 << "\">"
          << xml_escape(display_name(chart.techniques[t])) << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

ReportBundle build_report(const std::vector<FactorModel>& models) {
    if (models.empty()) {
        throw FormatError("no factor models to report");
    }
    ReportBundle bundle;
    for (const FactorModel& fm : models) {
        const std::string what = "factor model for " + fm.technique;
        require_finite(fm.eigenvalues, what);
        require_finite(fm.percent, what);
        require_finite(fm.cumulative_percent, what);
        require_finite(fm.rotation_ssl, what);
        require_finite(fm.descriptives.mean, what);
        require_finite(fm.descriptives.sd, what);
        require_finite(fm.communalities, what);
        require_finite(fm.initial_communalities, what);
        require_finite(fm.kmo.per_variable, what);
        require_finite(std::vector<double>{fm.kmo.overall, fm.bartlett.chi2, fm.bartlett.p_value}, what);
        require_finite(fm.correlation, what);
        require_finite(fm.score_coefficients, what);
        bundle.text += render_technique_tables(fm);
        bundle.text += '\n';
    }
    bundle.chart = chart_data(models);
    bundle.svg = render_chart_svg(bundle.chart);
    return bundle;
}

}  // namespace sortlab
