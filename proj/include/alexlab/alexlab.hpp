#pragma once

#include "alexlab/alexinv.hpp"
#include "alexlab/builders.hpp"
#include "alexlab/cyclotomic.hpp"
#include "alexlab/errors.hpp"
#include "alexlab/exactla.hpp"
#include "alexlab/fpgroup.hpp"
#include "alexlab/laurent.hpp"
#include "alexlab/norms.hpp"
#include "alexlab/obstruct.hpp"
#include "alexlab/torusgeo.hpp"
