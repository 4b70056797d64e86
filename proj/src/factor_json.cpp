#include "sortlab/factor_json.hpp"

#include "sortlab/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace sortlab {

namespace {

using nlohmann::json;

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    }
    return rows;
}

Matrix matrix_from(const json& j) {
    const auto rows = j.get<std::vector<std::vector<double>>>();
    if (rows.empty()) {
        return {};
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols()) {
            throw FormatError("ragged matrix in factor JSON");
        }
        for (std::size_t k = 0; k < m.cols(); ++k) {
            m(i, k) = rows[i][k];
        }
    }
    return m;
}

}  // namespace

std::string factor_model_to_json(const FactorModel& fm) {
    json j;
    j["technique"] = fm.technique;
    j["observations"] = fm.observations;
    j["score_mode"] = std::string(to_string(fm.score_mode));
    j["kappa"] = fm.kappa;
    j["variables"] = std::vector<std::string>(kVariableNames.begin(), kVariableNames.end());
    j["descriptives"] = {{"mean", fm.descriptives.mean}, {"sd", fm.descriptives.sd}};
    j["correlation"] = matrix_json(fm.correlation);
    j["bartlett"] = {{"chi2", fm.bartlett.chi2}, {"df", fm.bartlett.df}, {"p", fm.bartlett.p_value}};
    j["kmo"] = {{"overall", fm.kmo.overall},
                {"per_variable", fm.kmo.per_variable},
                {"degenerate", fm.kmo.degenerate}};
    j["eigenvalues"] = fm.eigenvalues;
    j["eigenvectors"] = matrix_json(fm.eigenvectors);
    j["percent"] = fm.percent;
    j["cumulative_percent"] = fm.cumulative_percent;
    j["loadings"] = matrix_json(fm.loadings);
    j["retained"] = fm.retained;
    j["communalities"] = {{"initial", fm.initial_communalities}, {"extraction", fm.communalities}};
    j["pattern"] = matrix_json(fm.pattern);
    j["structure"] = matrix_json(fm.structure);
    j["factor_correlation"] = matrix_json(fm.factor_correlation);
    j["rotation_ssl"] = fm.rotation_ssl;
    j["score_coefficients"] = matrix_json(fm.score_coefficients);
    j["contributions"] = matrix_json(fm.contributions);
    return j.dump(2) + "\n";
}

FactorModel factor_model_from_json(const std::string& text) {
    try {
        const json j = json::parse(text);
        FactorModel fm;
        fm.technique = j.at("technique").get<std::string>();
        fm.observations = j.at("observations").get<std::size_t>();
        const auto mode = j.at("score_mode").get<std::string>();
        if (mode == "zscore") {
            fm.score_mode = ScoreMode::zscore;
        } else if (mode == "paper-literal") {
            fm.score_mode = ScoreMode::paper_literal;
        } else {
            throw FormatError("unknown score_mode '" + mode + "'");
        }
        fm.kappa = j.at("kappa").get<double>();
        fm.descriptives.mean = j.at("descriptives").at("mean").get<std::vector<double>>();
        fm.descriptives.sd = j.at("descriptives").at("sd").get<std::vector<double>>();
        fm.correlation = matrix_from(j.at("correlation"));
        fm.bartlett.chi2 = j.at("bartlett").at("chi2").get<double>();
        fm.bartlett.df = j.at("bartlett").at("df").get<std::size_t>();
        fm.bartlett.p_value = j.at("bartlett").at("p").get<double>();
        fm.kmo.overall = j.at("kmo").at("overall").get<double>();
        fm.kmo.per_variable = j.at("kmo").at("per_variable").get<std::vector<double>>();
        fm.kmo.degenerate = j.at("kmo").at("degenerate").get<bool>();
        fm.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
        fm.eigenvectors = matrix_from(j.at("eigenvectors"));
        fm.percent = j.at("percent").get<std::vector<double>>();
        fm.cumulative_percent = j.at("cumulative_percent").get<std::vector<double>>();
        fm.loadings = matrix_from(j.at("loadings"));
        fm.retained = j.at("retained").get<std::size_t>();
        fm.initial_communalities = j.at("communalities").at("initial").get<std::vector<double>>();
        fm.communalities = j.at("communalities").at("extraction").get<std::vector<double>>();
        fm.pattern = matrix_from(j.at("pattern"));
        fm.structure = matrix_from(j.at("structure"));
        fm.factor_correlation = matrix_from(j.at("factor_correlation"));
        fm.rotation_ssl = j.at("rotation_ssl").get<std::vector<double>>();
        fm.score_coefficients = matrix_from(j.at("score_coefficients"));
        fm.contributions = matrix_from(j.at("contributions"));
        if (fm.eigenvalues.size() != fm.percent.size() || fm.retained == 0 ||
            fm.retained > fm.eigenvalues.size()) {
            throw FormatError("inconsistent factor model");
        }
        return fm;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed factor JSON: ") + e.what());
    }
}

void write_factor_json(const FactorModel& fm, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << factor_model_to_json(fm);
    out.flush();
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

FactorModel read_factor_json(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return factor_model_from_json(buf.str());
}

}  // namespace sortlab
