#include <cstdio>

int main() {
  std::puts("statetrack: subcommands not wired up yet");
  return 2;
}
