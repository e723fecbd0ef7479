#include "cli.hpp"

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "hbl/monad_io.hpp"

namespace hbl::cli
{

namespace
{

struct Flags
{
    std::string e = "1";
    std::optional<std::uint32_t> prime;
    bool rational = false;
    std::uint64_t seed = 1;
    unsigned samples = 20;
    unsigned fibres = 7;
    int range = 8;
    std::string divisor;
    std::optional<int> q;
    std::string suite = "all";
    std::string out;
    std::string format = "json";
};

void add_flags(CLI::App* cmd, Flags& f)
{
    cmd->add_option("--e", f.e, "Hirzebruch parameter e, or a range a..b");
    auto* prime = cmd->add_option("--prime", f.prime, "work over F_p (default p = 10007)");
    cmd->add_flag("--rational", f.rational, "work over the rationals")->excludes(prime);
    cmd->add_option("--seed", f.seed, "base seed; sample i uses seed + i");
    cmd->add_option("--samples,--count", f.samples, "monads sampled per e");
    cmd->add_option("--fibers", f.fibres, "fibres sampled for the splitting type");
    cmd->add_option("--range", f.range, "grid half-width for the cohomology comparison");
    cmd->add_option("--divisor", f.divisor, "single divisor a,b for a cohomology query");
    cmd->add_option("--q", f.q, "restrict a divisor query to H^q");
    cmd->add_option("--suite", f.suite, "verify suite: all, cohomology, reference-values, samples, dimensions, "
                                        "lemma-monads, rationality, euler");
    cmd->add_option("--out", f.out, "output path (report for verify/cohomology/dims, monads for sample)");
    cmd->add_option("--format", f.format, "report format")->check(CLI::IsMember({"json", "csv"}));
}

RunConfig to_config(const Flags& f)
{
    RunConfig cfg;
    std::tie(cfg.e_lo, cfg.e_hi) = parse_e_range(f.e);
    try
    {
        cfg.field = f.rational ? FieldSpec::rational() : FieldSpec::prime(f.prime.value_or(kDefaultPrime));
    }
    catch (const Error& ex)
    {
        throw UsageError(ex.what());
    }
    cfg.seed = f.seed;
    cfg.samples = f.samples;
    cfg.fibres = f.fibres;
    cfg.range = f.range;
    if (!f.divisor.empty())
        cfg.divisor = parse_divisor(f.divisor);
    cfg.q = f.q;
    cfg.suite = f.suite;
    cfg.out = f.out;
    cfg.format = f.format == "csv" ? Format::Csv : Format::Json;
    cfg.validate();
    return cfg;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    os << text;
    if (!os)
        throw std::runtime_error("failed writing '" + path + "'");
}

int emit(const Report& rep, const RunConfig& cfg, bool report_to_out, std::ostream& out)
{
    auto text = rep.render(cfg.format);
    if (report_to_out && !cfg.out.empty())
    {
        write_file(cfg.out, text);
        out << rep.command << ": " << (rep.pass() ? "pass" : "FAIL") << " (" << rep.check_count() - rep.failed_count()
            << "/" << rep.check_count() << " checks), report written to " << cfg.out << "\n";
    }
    else
        out << text;
    return rep.pass() ? kExitPass : kExitFail;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Monads and cohomology on Hirzebruch surfaces", "hbl"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);
    Flags flags;
    auto* cohomology = app.add_subcommand("cohomology", "compare the Cech engine with closed forms");
    auto* sample = app.add_subcommand("sample", "sample and classify monads, write them as JSON");
    auto* verify = app.add_subcommand("verify", "run the verification suites");
    auto* dims = app.add_subcommand("dims", "dimension arithmetic of the parameter space");
    for (auto* cmd : {cohomology, sample, verify, dims})
        add_flags(cmd, flags);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp&)
    {
        out << app.help();
        return kExitPass;
    }
    catch (const CLI::CallForVersion&)
    {
        out << kToolVersion << "\n";
        return kExitPass;
    }
    catch (const CLI::ParseError& ex)
    {
        err << "hbl: " << ex.what() << "\n";
        return kExitUsage;
    }

    try
    {
        auto cfg = to_config(flags);
        if (cohomology->parsed())
            return emit(cmd_cohomology(cfg), cfg, true, out);
        if (verify->parsed())
            return emit(cmd_verify(cfg), cfg, true, out);
        if (dims->parsed())
            return emit(cmd_dims(cfg), cfg, true, out);
        auto outcome = cmd_sample(cfg);
        if (!cfg.out.empty())
            write_file(cfg.out, monad_list_to_json(outcome.monads) + "\n");
        return emit(outcome.report, cfg, false, out);
    }
    catch (const UsageError& ex)
    {
        err << "hbl: " << ex.what() << "\n";
        return kExitUsage;
    }
    catch (const std::exception& ex)
    {
        err << "hbl: internal error: " << ex.what() << "\n";
        return kExitInternal;
    }
}

} // namespace hbl::cli
