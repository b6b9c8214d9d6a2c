#include "fixtures.hpp"

namespace fixtures {

const chromatic::color::BuildOutput& hex_build() {
  static const chromatic::color::BuildOutput out = [] {
    chromatic::color::PipelineConfig cfg;
    cfg.construction = chromatic::color::Construction::Hexagonal;
    cfg.cand_res = 40;
    return chromatic::color::build_coloring(cfg);
  }();
  return out;
}

}  // namespace fixtures
