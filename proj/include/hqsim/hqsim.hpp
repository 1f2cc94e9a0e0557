// Copyright 2026 The hqsim Authors - All rights reserved.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <hqsim/core.hpp>
#include <hqsim/fock.hpp>
#include <hqsim/linalg.hpp>
#include <hqsim/hubbard.hpp>
#include <hqsim/couplings.hpp>
#include <hqsim/spins.hpp>
#include <hqsim/sweff.hpp>
#include <hqsim/dynamics.hpp>
#include <hqsim/config.hpp>
#include <hqsim/sweep.hpp>
#include <hqsim/validate.hpp>
