#include <vector>
#include <string>

#include "nlcseq/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nlcseq::run_cli(args);
}
