#include "gaugelab/config.hpp"
#include <cstdio>
using namespace gaugelab;
int main() {
  const char* t = "preset = \"gauge_ising\"\nseed = 7\nn_range = [2, 4]\n";
  ExperimentConfig c = parse_config_text(t);
  std::printf("seed_set=%d seed=%llu n=[%d,%d] preset=%s\n", c.seed_set ? 1 : 0,
              (unsigned long long)c.seed, c.n_lo, c.n_hi, c.preset.c_str());
  return 0;
}
