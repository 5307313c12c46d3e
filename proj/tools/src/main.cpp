#include "khsq/error.hpp"
#include "khsq_app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

#ifndef KHSQ_DATA_DIR
#define KHSQ_DATA_DIR "data"
#endif

int main(int argc, char** argv) {
    using namespace khsq::app;
    CLI::App app{"khsq: Khovanov homology and the Steenrod square Sq2 on Khovanov spectra"};
    app.require_subcommand(1);
    JobSpec job;
    job.table = KHSQ_DATA_DIR "/knots.pdtab";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--pd", job.pds, "PD code, e.g. 'X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]'");
        sub->add_option("--name", job.names, "named diagram; m(K) mirrors, 'A + B' is a split union");
        sub->add_option("--table", job.table, "PD table for --name")->capture_default_str();
        sub->add_option("--format", job.format, "text, json or csv")
            ->capture_default_str()
            ->transform(CLI::IsMember({"text", "json", "csv"}, CLI::ignore_case));
        sub->add_option("--cache-dir", job.cache_dir, "result cache directory");
        sub->add_option("--jobs", job.jobs, "worker threads")->capture_default_str();
    };

    auto* hom = app.add_subcommand("homology", "integral and mod 2 Khovanov homology, even and odd");
    common(hom);
    hom->add_option("--parity", job.parity, "even, odd or both")
        ->capture_default_str()
        ->transform(CLI::IsMember({"even", "odd", "both"}, CLI::ignore_case));
    hom->add_option("--ring", job.ring, "z, f2 or both")
        ->capture_default_str()
        ->transform(CLI::IsMember({"z", "f2", "both"}, CLI::ignore_case));

    auto* stc = app.add_subcommand("st", "St_l tables");
    common(stc);
    stc->add_option("--l", job.ls, "spectrum indices, default 0,1,2,3")->delimiter(',');
    stc->add_option("--verify-table", job.verify_table, "diff against a transcribed St table");
    stc->add_flag("--all", job.all, "every knot of the verify table");

    auto* wed = app.add_subcommand("wedge", "stable wedge decomposition per quantum grading");
    common(wed);
    wed->add_option("--l", job.ls, "spectrum indices, default 0,1,2,3")->delimiter(',');

    auto* prop = app.add_subcommand("proptest", "seeded property suites");
    common(prop);
    prop->add_option("--seed", job.seed, "corpus and cocycle seed")->capture_default_str();
    prop->add_option("--suite", job.suites, "suite names, default all")->delimiter(',');
    prop->add_option("--diagrams", job.diagrams, "random diagrams")->capture_default_str();
    prop->add_option("--max-crossings", job.max_crossings, "crossing bound of random diagrams")->capture_default_str();
    prop->add_option("--cocycles", job.cocycles, "random cocycles per diagram")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*hom) return cmd_homology(job, std::cout);
        if (*stc) return cmd_st(job, std::cout);
        if (*wed) return cmd_wedge(job, std::cout);
        return cmd_proptest(job, std::cout);
    } catch (const khsq::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return khsq::is_input_error(e.kind()) ? 2 : 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
