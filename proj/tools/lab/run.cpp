#include <algorithm>
#include <sstream>

#include "boussinesq/errors.hpp"
#include "lab.hpp"

namespace bq::lab {

std::string usage() {
    std::ostringstream out;
    out << "usage: boussinesq_lab <command> [key=value ...] [config=file] [out=path] [force=true]\n"
           "commands:\n"
           "  sweep           regime= s= [sprime=0] [N=128,256,512,1024] [support=false]\n"
           "  lemmas          regime=<name>|all seed= [N=100000] [samples=10000]\n"
           "  geometry        seed= [N=17,1000] [samples=10000] [lattice=9]\n"
           "  schur           [n=1,2] [s=...] [case=I|II|both] [Nmax=1048576]\n"
           "  bilinear-probe  seed= [n=1] [s=0] [points=] [trials=]\n"
           "  evolve          regime= [mode=trajectory|picard] [dt=] [T=] [lambda=]\n"
           "  energy          [dim=1] [a= b= c= d=] [dt=0.05] [T=5] [refine=true]\n"
           "  diag-check      seed= [samples=10000] [trials=3]\n"
           "exit codes: 0 all checks pass, 2 a check failed, 1 usage or I/O error\n";
    return out.str();
}

int run(std::span<const std::string> args, std::ostream& stdout_stream, std::ostream& stderr_stream) {
    if (args.empty()) {
        stderr_stream << usage();
        return kExitUsage;
    }
    const std::string& command = args.front();
    if (command == "help" || command == "--help" || command == "-h") {
        stdout_stream << usage();
        return kExitPass;
    }
    const auto names = command_names();
    if (std::find(names.begin(), names.end(), command) == names.end()) {
        stderr_stream << "error: unknown command '" << command << "'\n" << usage();
        return kExitUsage;
    }

    try {
        Options options = Options::parse(args.subspan(1));
        const std::optional<std::string> path = options.text("out");
        const bool force = options.flag("force", false);
        if (path) check_destination(*path, force);

        const Report report = run_command(command, options);
        if (path) {
            write_report(report, *path);
        } else {
            report.write(stdout_stream);
        }
        for (std::size_t row : report.failures()) {
            stderr_stream << "FAIL " << report.schema() << " row " << row + 1 << ":";
            for (const std::string& cell : report.rows()[row]) stderr_stream << ' ' << cell;
            stderr_stream << '\n';
        }
        for (const std::string& message : report.summary_failures()) {
            stderr_stream << "FAIL " << report.schema() << ": " << message << '\n';
        }
        const bool pass = report.all_pass() && report.summary_failures().empty();
        return pass ? kExitPass : kExitFailed;
    } catch (const std::exception& e) {
        stderr_stream << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace bq::lab
