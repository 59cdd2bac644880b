#include "gi/io.hpp"

int main(int argc, char** argv) {
    return gi::cli_main(argc, argv);
}
