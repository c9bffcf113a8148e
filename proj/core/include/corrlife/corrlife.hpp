#pragma once

#include "corrlife/correlation.hpp"
#include "corrlife/date.hpp"
#include "corrlife/errors.hpp"
#include "corrlife/ingest.hpp"
#include "corrlife/lifetime.hpp"
#include "corrlife/mst.hpp"
#include "corrlife/synth.hpp"
