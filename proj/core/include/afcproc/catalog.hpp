#ifndef AFCPROC_CATALOG_HPP
#define AFCPROC_CATALOG_HPP

#include <string>
#include <vector>

#include "afcproc/scenario.hpp"

namespace afcproc {

struct CatalogEntry {
  std::string id;
  std::string description;
};

// Built-in demonstration scenarios: fig2, fig3a-c, fig4, fig5, fig6b-c,
// fig7a-c, fig8b-c, fig9, fig10a-b, figA2a-b.
std::vector<CatalogEntry> list_catalog();
bool catalog_has(const std::string& id);
ScenarioConfig catalog_scenario(const std::string& id);
ProcessorProgram catalog_program(const std::string& id);

// The six-segment processor used by the sequencing/multiplexing scenarios:
// 200 MHz bands at -400/-200/+200/+400/+600 MHz giving 25/50/75/100/125 ns,
// plus a double segment at +800 MHz with 40 and 65 ns echoes.
ProcessorProgram six_segment_processor(const SegmentDefaults& defaults = {});

}  // namespace afcproc

#endif
