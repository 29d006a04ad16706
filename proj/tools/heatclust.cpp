#include <string>
#include <vector>

#include "heatclust/cli.hpp"

int main(int argc, char** argv) {
    return heatclust::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
