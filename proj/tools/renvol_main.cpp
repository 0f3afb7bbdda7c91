#include <iostream>
#include <string>
#include <vector>

#include "renvol/cli.hpp"

namespace {

void print_usage() {
    std::cout <<
        "usage: renvol <command> [--opt value]...\n"
        "\n"
        "commands:\n"
        "  ball        --r <radius>\n"
        "  surface     --surface <spec> [--nodes N] [--band-limit L] [--csv path]\n"
        "  flow        --surface <spec> [--r-grid 0,1,2,4,6]\n"
        "  minkowski   --surface <spec>\n"
        "  ricci-flow  [--omega <spec>] [--dt x] [--tmax x] [--tol x] [--csv path]\n"
        "  polyakov    --omega <spec> [--gap]\n"
        "  envelope    [--omega <spec>] [--t offset] [--csv path]\n"
        "  profile     --profile <spec> [--vmax x] [--samples N] [--csv path]\n"
        "  hawking     --profile <spec> [--csv path]\n"
        "  vr          --profile <spec> | --surface <spec> [--vmax x]\n"
        "  tube        [--a x] [--lambda x] [--bc neumann|periodic] [--csv path]\n"
        "\n"
        "common options: --out report.json, --config file.json, --seed n\n"
        "surface specs:  sphere:<r>  cos:<r0>,<amp>,<k>  csv:<path>\n"
        "omega specs:    const:<c>  zonal:<l>,<amp>  mobius:<t>  random:<amp>[,<L>]  json:<path>\n"
        "profile specs:  fuchsian:genus=<g>  fuchsian:chi=<c>  csv:<path>\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        print_usage();
        return args.empty() ? 2 : 0;
    }
    std::string report;
    const int status = renvol::run_cli(args, &report);
    std::cout << report << "\n";
    return status;
}
