// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rissim/coverage.hpp"
#include "rissim/farfield.hpp"
#include "rissim/fieldsum.hpp"
#include "rissim/io.hpp"
#include "rissim/overhead.hpp"
#include "rissim/radio.hpp"
