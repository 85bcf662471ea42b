#include <cstdio>

int main() {
    std::puts("empcc: pipeline CLI (subcommands added with the harness)");
    return 0;
}
