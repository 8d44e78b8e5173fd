#include "sp2spec/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sp2spec/envelope.hpp"
#include "support.hpp"

using namespace sp2spec;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult invoke(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"sp2spec"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    CliResult r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

// Value of a trailing `key=value` summary line.
double summary_value(const std::string& text, const std::string& key) {
    const std::string tag = "\n" + key + "=";
    const auto pos = text.find(tag);
    REQUIRE(pos != std::string::npos, "summary key missing from report");
    return std::stod(text.substr(pos + tag.size()));
}

// Comma-separated doubles from the first data row (line after the header).
std::vector<double> first_row(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    int seen = 0;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#') continue;
        ++seen;
        if (seen < 2) continue;  // the column-name line comes first
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        return row;
    }
    REQUIRE(false, "no data row in report");
    return {};
}

void testProvenanceAndCplRow() {
    const CliResult r = invoke({"cpl", "--lmax", "10"});
    REQUIRE(r.code == 0, "cpl exits 0");
    const std::string expected_head =
        "# sp2spec 1.0.0\n# seed=1\n# config: subcommand=cpl lmax=10 "
        "format=csv\nell,p,c\n0,0,1\n";
    REQUIRE(r.out.rfind(expected_head, 0) == 0,
            "provenance header and first rows must match exactly");
    REQUIRE(contains(r.out, "\n0.5,0.5,0.707106781186548\n"),
            "c table must contain the (1/2, 1/2) row");
    REQUIRE(contains(r.out, "\n0.5,-0.5,0.707106781186548\n"),
            "c table must contain the mirrored row");
    std::puts("[PASS] cpl: provenance header and anchor rows");
}

void testDeterminism() {
    const std::vector<std::string> args{"quasi", "--defect-sweep", "100",
                                        "--seed", "7"};
    const CliResult a = invoke(args);
    const CliResult b = invoke(args);
    REQUIRE(a.code == 0 && b.code == 0, "quasi sweep exits 0");
    REQUIRE(a.out == b.out, "same config and seed must be byte-identical");

    const CliResult c = invoke({"quasi", "--defect-sweep", "100", "--seed", "8"});
    REQUIRE(c.out != a.out, "a different seed must change the sample");
    std::puts("[PASS] determinism: byte-identical reruns, seed-sensitive data");
}

void testExitCodes() {
    REQUIRE(invoke({"nope"}).code == 2, "unknown subcommand exits 2");
    REQUIRE(contains(invoke({"nope"}).err, "input error"),
            "unknown subcommand reports an input error");

    const CliResult short_matrix = invoke({"kak", "1", "2", "3"});
    REQUIRE(short_matrix.code == 2, "short matrix exits 2");
    REQUIRE(contains(short_matrix.err, "input error"), "short matrix message");

    const CliResult no_matrix = invoke({"kak"});
    REQUIRE(no_matrix.code == 2, "missing matrix exits 2");
    REQUIRE(contains(no_matrix.err, "malformed matrix input"),
            "missing matrix names the malformed-input error");

    const CliResult bad_matrix =
        invoke({"kak", "1", "0", "0", "0", "0", "1", "0", "0", "0", "0", "1",
                "0", "0", "0", "0", "2"});
    REQUIRE(bad_matrix.code == 2, "non-symplectic matrix exits 2");
    REQUIRE(contains(bad_matrix.err, "not symplectic"),
            "non-symplectic matrix names the check");

    const CliResult tight = invoke({"schatten", "--kind", "T", "--p", "6",
                                    "--theta", "0.5", "--tol", "1e-9"});
    REQUIRE(tight.code == 2, "unreachable tolerance exits 2");
    REQUIRE(contains(tight.err, "unreachable tolerance"),
            "tolerance failure names itself");

    REQUIRE(invoke({"quasi"}).code == 2, "quasi without a sweep exits 2");
    REQUIRE(invoke({"envelope", "--s", "0.2"}).code == 2,
            "s above s_minus exits 2");
    REQUIRE(invoke({"cpl", "--format", "xml"}).code == 2,
            "unknown format exits 2");
    REQUIRE(invoke({"cpl", "--lmax", "0.3"}).code == 2,
            "non-half-integer lmax exits 2");
    std::puts("[PASS] exit codes: distinct input errors all exit 2");
}

void testJsonMirror() {
    const CliResult r = invoke({"envelope", "--beta", "1", "--format", "json"});
    REQUIRE(r.code == 0, "envelope json exits 0");
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["provenance"]["version"] == "1.0.0", "json version field");
    REQUIRE(doc["provenance"]["config"]["subcommand"] == "envelope",
            "json config echo");
    REQUIRE(doc["columns"] == nlohmann::json({"beta", "gamma", "epsilon"}),
            "json column names");
    REQUIRE(doc["rows"].size() == 1, "json single row");
    const EnvelopeParams params = make_envelope_params(0.25, 0.125, 0.0, 0.0);
    requireCloseAbs("json epsilon value", doc["rows"][0][2].get<double>(),
                    epsilon(params, 1.0, 0.0), 1e-15);

    const CliResult k =
        invoke({"kak", "--random", "--seed", "3", "--format", "json"});
    REQUIRE(k.code == 0, "kak json exits 0");
    const nlohmann::json kak_doc = nlohmann::json::parse(k.out);
    REQUIRE(kak_doc["columns"].size() == 19, "kak column count");
    const auto& row = kak_doc["rows"][0];
    REQUIRE(row.size() == 19, "kak row width");
    const double beta = row[0].get<double>();
    const double gamma = row[1].get<double>();
    REQUIRE(beta >= gamma && gamma >= 0.0, "kak chamber order");
    REQUIRE(row[18].get<double>() < 1e-8, "kak reconstruction residual");
    std::puts("[PASS] json: field-for-field mirror of the csv reports");
}

void testQuasiSweeps() {
    const CliResult d = invoke({"quasi", "--defect-sweep", "300", "--seed", "11"});
    REQUIRE(d.code == 0, "defect sweep exits 0");
    REQUIRE(contains(d.out, "phi_xy,phi_x,phi_y,defect\n"), "defect columns");
    REQUIRE(summary_value(d.out, "max_defect") < 0.5 * M_PI,
            "defect summary below pi/2");

    const CliResult e = invoke({"quasi", "--eta-sweep", "300", "--seed", "11"});
    REQUIRE(e.code == 0, "eta sweep exits 0");
    REQUIRE(contains(e.out, "eta,near_branch_cut\n"), "eta columns");
    REQUIRE(summary_value(e.out, "max_abs_eta") < M_PI,
            "eta summary below pi");
    std::puts("[PASS] quasi: both sweeps emit rows and bounded summaries");
}

void testRidgeAndBounds() {
    const CliResult r = invoke({"ridge", "--max", "8", "--step", "0.5"});
    REQUIRE(r.code == 0, "ridge exits 0");
    requireCloseAbs("ridge sup stabilizes early",
                    summary_value(r.out, "sup_full"), 1.32892128604559, 1e-10);
    REQUIRE(summary_value(r.out, "excess_percent") <= 5.0, "ridge excess");

    const CliResult b = invoke({"bounds-cpl", "--lmax", "60"});
    REQUIRE(b.code == 0, "bounds-cpl exits 0");
    REQUIRE(summary_value(b.out, "c_fit") >= 1.0 - 1e-12,
            "fit constant includes the l = 0 ratio");
    REQUIRE(summary_value(b.out, "excess_percent") <= 5.0,
            "upper half stays within the fitted constant");
    std::puts("[PASS] ridge and bounds-cpl: stabilization summaries");
}

void testSchattenReport() {
    const CliResult r = invoke({"schatten", "--kind", "T", "--p", "6", "--theta",
                                "0.5235987755982988"});
    REQUIRE(r.code == 0, "schatten T exits 0");
    REQUIRE(contains(r.out, "q,theta1,theta2,value,tail,lmax\n"),
            "schatten column names");
    const std::vector<double> row = first_row(r.out);
    REQUIRE(row.size() == 6, "schatten row width");
    requireCloseAbs("schatten T value on the report row", row[3],
                    1.1356024302635936, 1e-12);
    requireCloseAbs("T compares against pi/4", row[2], M_PI / 4.0, 1e-15);
    REQUIRE(contains(r.out, "\ntruncated=1\n"), "truncation is reported");

    const char* path = "test_cli_output.csv";
    const CliResult f = invoke({"schatten", "--kind", "T", "--p", "6", "--theta",
                                "0.5235987755982988", "--output", path});
    REQUIRE(f.code == 0, "file output exits 0");
    REQUIRE(f.out.empty(), "file output leaves stdout empty");
    std::ifstream file(path);
    std::stringstream buffer;
    buffer << file.rdbuf();
    REQUIRE(buffer.str() == r.out, "file report matches the stdout report");
    std::remove(path);
    std::puts("[PASS] schatten: report row, pi/4 reference, --output file");
}

void testHolderFitReport() {
    const CliResult r = invoke({"holder-fit", "--kind", "T", "--p", "8"});
    REQUIRE(r.code == 0, "holder-fit exits 0");
    REQUIRE(contains(r.out, "q,exponent,max_ratio\n"), "fit column names");
    const std::vector<double> row = first_row(r.out);
    requireCloseAbs("fit echoes q", row[0], 8.0, 1e-15);
    requireCloseAbs("T exponent 1/2 - 2/p", row[1], 0.25, 1e-15);
    REQUIRE(row[2] > 0.0 && std::isfinite(row[2]), "fitted constant is finite");
    std::puts("[PASS] holder-fit: q, exponent, and fitted constant row");
}

}  // namespace

int main() {
    testProvenanceAndCplRow();
    testDeterminism();
    testExitCodes();
    testJsonMirror();
    testQuasiSweeps();
    testRidgeAndBounds();
    testSchattenReport();
    testHolderFitReport();
    std::puts("All cli checks passed");
    return 0;
}
