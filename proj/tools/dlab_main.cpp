#include <string>
#include <vector>

#include "dlab/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dlab::run_cli(args);
}
