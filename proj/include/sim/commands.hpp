#pragma once

#include <string>
#include <vector>

#include "sim/phys_core.hpp"
#include "sim/scenario.hpp"

namespace sim {

// Quoted-value reproduction table behind the paper-numbers command.
struct PaperNumberRow {
    std::string name;
    double computed = 0.0;
    double expected = 0.0;
    double rel_tol = 0.0;

    double rel_error() const;
    bool pass() const { return rel_error() <= rel_tol; }
};

std::vector<PaperNumberRow> compute_paper_numbers(const AtomSpec& atom,
                                                  const TrapSpec& trap);

// Scenario -> domain objects (shared by the CLI and tests).
AtomSpec make_atom(const Scenario& sc);
TrapSpec make_trap(const Scenario& sc);
PulseSpec make_pulse(const Scenario& sc, double gamma);
CoMState make_state(const Scenario& sc, double gamma, const TrapSpec& trap);

// Executes one CLI command: fig2 | fig3 | fig4 | fig5 | doppler-check |
// sweep | paper-numbers. Writes the CSV and its sidecar metadata file.
// Returns the process exit code (0 success, 3 numerical/oracle failure);
// configuration problems throw config_error.
int run_command(const std::string& name, const Scenario& scenario);

} // namespace sim
