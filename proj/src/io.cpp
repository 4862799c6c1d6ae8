#include "dirqsp/io.hpp"

#include "dirqsp/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dirqsp {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InputError("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write file: " + path);
    out << text;
}

}  // namespace

HamiltonianSpec parse_spec(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON spec: ") + e.what());
    }
    HamiltonianSpec spec;
    try {
        std::string variant = j.at("variant").get<std::string>();
        if (variant == "direct") {
            spec.kind = HamiltonianSpec::Kind::direct;
            spec.enc_lambda = j.at("enc_lambda").get<double>();
            const auto& m = j.at("matrix");
            Eigen::Index dim = m.at("dim").get<Eigen::Index>();
            auto re = m.at("re").get<std::vector<double>>();
            auto im = m.at("im").get<std::vector<double>>();
            if (dim < 1 || re.size() != static_cast<std::size_t>(dim * dim) || im.size() != re.size())
                throw InputError("spec: matrix arrays must have dim*dim entries");
            spec.matrix.resize(dim, dim);
            for (Eigen::Index i = 0; i < dim; ++i)
                for (Eigen::Index k = 0; k < dim; ++k) {
                    std::size_t idx = static_cast<std::size_t>(i * dim + k);
                    spec.matrix(i, k) = std::complex<double>(re[idx], im[idx]);
                }
        } else if (variant == "pauli_lcu") {
            spec.kind = HamiltonianSpec::Kind::pauli_lcu;
            spec.n_qubits = j.at("n_qubits").get<int>();
            for (const auto& t : j.at("terms")) {
                PauliTerm term;
                term.pauli = t.at("pauli").get<std::string>();
                term.coeff = t.at("coeff").get<double>();
                spec.terms.push_back(term);
            }
        } else {
            throw InputError("spec: variant must be 'direct' or 'pauli_lcu'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("spec: missing or mistyped field: ") + e.what());
    }
    return spec;
}

HamiltonianSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open spec file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_spec(buf.str());
}

void save_angles(const AngleSequence& angles, const std::string& path) {
    ordered_json j;
    j["d"] = angles.d;
    std::vector<double> theta_rev(angles.theta.rbegin(), angles.theta.rend());
    std::vector<double> phi_rev(angles.phi.rbegin(), angles.phi.rend());
    j["theta"] = theta_rev;
    j["phi"] = phi_rev;
    j["rot_lambda"] = angles.rot_lambda;
    j["phase_fix_delta"] = angles.phase_fix_delta;
    j["convention"] = "appendix-B-modified";
    write_text_file(path, j.dump(2) + "\n");
}

AngleSequence load_angles(const std::string& path) {
    ordered_json j = read_json_file(path);
    AngleSequence angles;
    try {
        angles.d = j.at("d").get<int>();
        auto theta_rev = j.at("theta").get<std::vector<double>>();
        auto phi_rev = j.at("phi").get<std::vector<double>>();
        if (angles.d < 0 || theta_rev.size() != static_cast<std::size_t>(angles.d) + 1 ||
            phi_rev.size() != theta_rev.size())
            throw InputError("angles: theta/phi must have d+1 entries");
        angles.theta.assign(theta_rev.rbegin(), theta_rev.rend());
        angles.phi.assign(phi_rev.rbegin(), phi_rev.rend());
        angles.rot_lambda = j.at("rot_lambda").get<double>();
        angles.phase_fix_delta = j.at("phase_fix_delta").get<double>();
        if (j.at("convention").get<std::string>() != "appendix-B-modified")
            throw InputError("angles: unknown convention");
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("angles: missing or mistyped field: ") + e.what());
    }
    return angles;
}

std::string report_to_json(const SimulationReport& report) {
    ordered_json j;
    j["tau"] = report.tau;
    j["epsilon"] = report.epsilon;
    j["K"] = report.order;
    j["alpha"] = report.alpha;
    j["d"] = report.degree_d;
    j["residuals"] = {{"circle_norm", report.circle_norm_residual},
                      {"completion", report.completion_residual},
                      {"reconstruction", report.reconstruction_residual},
                      {"plus_block_structural", report.plus_block_structural}};
    j["error_2norm"] = report.error_2norm;
    j["queries"] = {{"directional", report.queries_directional},
                    {"baseline_standard", report.queries_baseline},
                    {"ratio", report.query_ratio}};
    j["precision"] = report.precision;
    j["seed"] = report.seed;
    j["timing_ms"] = {{"encode", report.timings.encode_ms},
                      {"truncation_completion", report.timings.truncation_completion_ms},
                      {"angles", report.timings.angles_ms},
                      {"circuit", report.timings.circuit_ms},
                      {"compare", report.timings.compare_ms}};
    return j.dump(2) + "\n";
}

void save_report(const SimulationReport& report, const std::string& path) {
    write_text_file(path, report_to_json(report));
}

std::string bench_to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "tau,epsilon,K,queries_dir,queries_std,ratio\n";
    out.precision(17);
    for (const auto& row : rows)
        out << row.tau << "," << row.epsilon << "," << row.order << "," << row.queries_directional << ","
            << row.queries_baseline << "," << row.ratio << "\n";
    return out.str();
}

void save_bench_csv(const std::vector<BenchRow>& rows, const std::string& path) {
    write_text_file(path, bench_to_csv(rows));
}

}  // namespace dirqsp
