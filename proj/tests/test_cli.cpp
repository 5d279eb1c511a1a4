#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "twoadic/cli.hpp"

using namespace twoadic;
using cli::Command;
using cli::RunConfig;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("twoadic_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const io::Json& j) {
        const auto p = dir_ / name;
        io::write_json(p, j);
        return p;
    }

    RunConfig config(Command c) {
        RunConfig cfg;
        cfg.command = c;
        cfg.output_dir = dir_ / "out";
        return cfg;
    }

    int run(const RunConfig& cfg) {
        out_.str("");
        err_.str("");
        return cli::run(cfg, out_, err_);
    }

    io::Json error() const { return io::parse_json(err_.str()); }

    fs::path dir_;
    std::ostringstream out_, err_;
};

io::Json two_point() { return io::to_json(StepFunction::from_real(0, 1, std::vector<double>{-1.0, 1.0})); }

}  // namespace

TEST_F(CliTest, VentilateConstantFlux) {
    auto cfg = config(Command::Ventilate);
    cfg.input = write("one.json", io::to_json(StepFunction::constant(1.0, 0, 4)));
    cfg.alpha = 1.5;
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const StepFunction p = io::step_function_from_json(io::read_json(dir_ / "out" / "ventilate.json"));
    for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(p[i].real(), 2.0, 1e-14);

    cfg.input = dir_ / "out" / "ventilate.json";
    cfg.direction = cli::Direction::DN;
    cfg.output = dir_ / "back.json";
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const StepFunction u = io::step_function_from_json(io::read_json(dir_ / "back.json"));
    for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(u[i].real(), 1.0, 1e-14);
}

TEST_F(CliTest, VentilateExplicitTreeUsesFiniteSolver) {
    auto cfg = config(Command::Ventilate);
    cfg.input = write("u.json", io::to_json(StepFunction::constant(1.0, 0, 1)));
    cfg.tree = write("tree.json", io::to_json(io::TreeConfig{ResistanceProfile::explicit_profile({{1.0}, {1.0, 1.0}}), 1}));
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    // leaf fluxes 1/2 each: root edge 1, leaf edge 1/2
    const StepFunction p = io::step_function_from_json(io::read_json(dir_ / "out" / "ventilate.json"));
    EXPECT_NEAR(p[0].real(), 1.5, 1e-14);
    EXPECT_NEAR(p[1].real(), 1.5, 1e-14);
}

TEST_F(CliTest, NormOfTwoPointField) {
    auto cfg = config(Command::Norm);
    cfg.input = write("f.json", two_point());
    cfg.s = 0.25;
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const auto j = io::read_json(dir_ / "out" / "norm.json");
    EXPECT_NEAR(j["hs"].get<double>(), std::pow(3.0, 0.25), 1e-14);
    EXPECT_EQ(j["l2"].get<double>(), 1.0);
    EXPECT_TRUE(j.contains("as"));

    cfg.format = cli::Format::Csv;
    ASSERT_EQ(run(cfg), cli::kOk);
    const std::string csv = io::read_text(dir_ / "out" / "norm.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "key,value");
    EXPECT_NE(csv.find("hs,"), std::string::npos);
}

TEST_F(CliTest, TraceWritesCsvWithExpectedDecay) {
    auto cfg = config(Command::Trace);
    cfg.alpha = 1.63;
    cfg.s = 0.0;
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const auto rows = io::parse_trace_csv(io::read_text(dir_ / "out" / "trace.csv"));
    ASSERT_EQ(rows.size(), 14u);
    EXPECT_EQ(rows.front().n, 1);
    const auto summary = io::read_json(dir_ / "out" / "trace.report.json");
    EXPECT_EQ(summary["depth"], 14);
    EXPECT_NEAR(summary["h1"].get<double>(), 1.0, 1e-12);
    EXPECT_TRUE(fs::exists(dir_ / "out" / "trace.json"));
    std::vector<double> l2;
    for (const auto& r : rows) l2.push_back(r.l2_increment);
    EXPECT_NEAR(summary["fitted_decay"].get<double>(), fit_geometric_decay(l2), 1e-15);
}

TEST_F(CliTest, TraceRejectsSupercriticalS) {
    auto cfg = config(Command::Trace);
    cfg.alpha = 1.63;
    cfg.s = 0.3;
    EXPECT_EQ(run(cfg), cli::kPreconditionError);
    EXPECT_EQ(error()["error"]["kind"], "precondition");
    EXPECT_EQ(error()["error"]["message"], "condition_hs failed: s >= s_alpha");
    EXPECT_FALSE(fs::exists(dir_ / "out" / "trace.json"));
}

TEST_F(CliTest, TraceOfGivenField) {
    const auto R = ResistanceProfile::geometric(1.3);
    auto cfg = config(Command::Trace);
    cfg.alpha = 1.3;
    cfg.input = write("field.json", io::to_json(sample_h1_field(R, 5, 2, 1.0)));
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    EXPECT_EQ(io::parse_trace_csv(io::read_text(dir_ / "out" / "trace.csv")).size(), 5u);
}

TEST_F(CliTest, SchemaErrorExitCode) {
    auto cfg = config(Command::Norm);
    cfg.input = write("bad.json", io::Json{{"support_level", 0}, {"resolution", 1}, {"values", {1.0}}});
    EXPECT_EQ(run(cfg), cli::kSchemaError);
    EXPECT_EQ(error()["error"]["kind"], "schema");
    const auto p = dir_ / "garbage.json";
    io::write_text_atomic(p, "{not json");
    cfg.input = p;
    EXPECT_EQ(run(cfg), cli::kSchemaError);
}

TEST_F(CliTest, MissingInputIsPrecondition) {
    EXPECT_EQ(run(config(Command::Transform)), cli::kPreconditionError);
    auto cfg = config(Command::Norm);
    cfg.input = dir_ / "nope.json";
    EXPECT_EQ(run(cfg), cli::kRuntimeError);
    EXPECT_EQ(error()["error"]["kind"], "runtime");
}

TEST_F(CliTest, VentilateAlphaOutOfRange) {
    auto cfg = config(Command::Ventilate);
    cfg.input = write("u.json", two_point());
    cfg.alpha = 2.0;
    EXPECT_EQ(run(cfg), cli::kPreconditionError);
}

TEST_F(CliTest, TransformRoundTrip) {
    Rng rng(3);
    const StepFunction f = random_complex_step_function(rng, 0, 6);
    auto cfg = config(Command::Transform);
    cfg.input = write("f.json", io::to_json(f));
    ASSERT_EQ(run(cfg), cli::kOk);
    cfg.input = dir_ / "out" / "transform.json";
    cfg.inverse = true;
    cfg.output = dir_ / "back.json";
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const StepFunction g = io::step_function_from_json(io::read_json(dir_ / "back.json"));
    for (std::size_t i = 0; i < f.size(); ++i) EXPECT_LT(std::abs(g[i] - f[i]), 1e-12);
}

TEST_F(CliTest, TransformOnLargerSupport) {
    auto cfg = config(Command::Transform);
    cfg.input = write("f.json", io::to_json(indicator(Cell{2, 0}, 2, 2)));
    ASSERT_EQ(run(cfg), cli::kOk);
    const StepFunction t = io::step_function_from_json(io::read_json(dir_ / "out" / "transform.json"));
    EXPECT_EQ(t.support_level(), 2);
}

TEST_F(CliTest, SolveTreeBothMethods) {
    auto cfg = config(Command::SolveTree);
    cfg.input = write("p.json", io::to_json(StepFunction::from_real(0, 1, std::vector<double>{3.0, 3.0})));
    cfg.tree = write("tree.json", io::to_json(io::TreeConfig{ResistanceProfile::explicit_profile({{1.0}, {1.0, 1.0}}), 1}));
    for (auto m : {SolverMethod::Dense, SolverMethod::Fast}) {
        cfg.method = m;
        ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
        const auto j = io::read_json(dir_ / "out" / "solve-tree.json");
        EXPECT_NEAR(j["leaf_flux"][0].get<double>(), 1.0, 1e-14);
        EXPECT_NEAR(j["root_flux"].get<double>(), 2.0, 1e-14);
    }
}

TEST_F(CliTest, EmbedPullback) {
    auto cfg = config(Command::Embed);
    cfg.input = write("g.json", io::to_json(GridFunction(1, 1, {1.0, 0.0})));
    ASSERT_EQ(run(cfg), cli::kOk);
    EXPECT_EQ(io::step_function_from_json(io::read_json(dir_ / "out" / "embed.json")), indicator(Cell{1, 0}));
}

TEST_F(CliTest, ReportContents) {
    auto cfg = config(Command::Report);
    cfg.s = 0.25;
    cfg.alpha = 1.63;
    cfg.resolution = 6;
    cfg.samples = 4;
    ASSERT_EQ(run(cfg), cli::kOk) << err_.str();
    const auto j = io::read_json(dir_ / "out" / "report.json");
    EXPECT_EQ(j["equivalence"]["hs_over_as"]["per_resolution"].size(), 5u);
    EXPECT_TRUE(j["continuity"]["bounded"].get<bool>());
    cfg.s.reset();
    EXPECT_EQ(run(cfg), cli::kPreconditionError);
}

TEST_F(CliTest, SameSeedGivesByteIdenticalOutputs) {
    auto cfg = config(Command::Trace);
    cfg.alpha = 1.9;
    cfg.s = 0.02;
    cfg.seed = 5;
    cfg.depth = 10;
    ASSERT_EQ(run(cfg), cli::kOk);
    const std::string a = io::read_text(dir_ / "out" / "trace.csv"), aj = io::read_text(dir_ / "out" / "trace.json");
    ASSERT_EQ(run(cfg), cli::kOk);
    EXPECT_EQ(io::read_text(dir_ / "out" / "trace.csv"), a);
    EXPECT_EQ(io::read_text(dir_ / "out" / "trace.json"), aj);
    cfg.seed = 6;
    ASSERT_EQ(run(cfg), cli::kOk);
    EXPECT_NE(io::read_text(dir_ / "out" / "trace.csv"), a);
}

TEST_F(CliTest, EmittedFilesReparseBitIdentically) {
    auto cfg = config(Command::Ventilate);
    Rng rng(8);
    cfg.input = write("u.json", io::to_json(random_step_function(rng, 7)));
    cfg.alpha = 1.63;
    ASSERT_EQ(run(cfg), cli::kOk);
    const auto path = dir_ / "out" / "ventilate.json";
    const StepFunction p = io::step_function_from_json(io::read_json(path));
    EXPECT_EQ(io::dump(io::to_json(p)), io::read_text(path));
}

TEST_F(CliTest, OutputDirFromEnvironment) {
    auto cfg = config(Command::Norm);
    cfg.output_dir.reset();
    cfg.input = write("f.json", two_point());
    const auto envdir = dir_ / "env";
    ::setenv(cli::kOutputDirEnv, envdir.c_str(), 1);
    const int rc = run(cfg);
    ::unsetenv(cli::kOutputDirEnv);
    ASSERT_EQ(rc, cli::kOk) << err_.str();
    EXPECT_TRUE(fs::exists(envdir / "norm.json"));
    EXPECT_EQ(out_.str(), (envdir / "norm.json").string() + "\n");
}
