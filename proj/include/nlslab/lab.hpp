#pragma once

// Umbrella header: the full laboratory surface in one include.
//
// Layering (each header includes what it needs):
//   field/grid/norms        - spectra on the torus, weighted norms
//   paradiff/paralin        - low-high decompositions and symbol extraction
//   diagonalizer            - change of variables removing the worst term
//   solver                  - time stepping with telemetry
//   experiment/sampling     - run descriptions and admissible initial data
//   constants/registry      - constant pinning and inequality sampling
//   gronwall/certificates   - comparison lemmas and energy envelopes
//   lifespan                - guaranteed-time scans
//   config_io/report        - JSON configs, CSV artifacts, manifests

#include "nlslab/certificates.hpp"
#include "nlslab/config_io.hpp"
#include "nlslab/constants.hpp"
#include "nlslab/cutoff.hpp"
#include "nlslab/diagonalizer.hpp"
#include "nlslab/experiment.hpp"
#include "nlslab/field.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/gronwall.hpp"
#include "nlslab/lattice.hpp"
#include "nlslab/lifespan.hpp"
#include "nlslab/norms.hpp"
#include "nlslab/paradiff.hpp"
#include "nlslab/paralin.hpp"
#include "nlslab/parallel.hpp"
#include "nlslab/registry.hpp"
#include "nlslab/report.hpp"
#include "nlslab/sampling.hpp"
#include "nlslab/solver.hpp"
