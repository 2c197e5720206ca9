#pragma once

#include "gradinf/algebraic.hpp"
#include "gradinf/bivariate.hpp"
#include "gradinf/classifier.hpp"
#include "gradinf/ext_rational.hpp"
#include "gradinf/laurent.hpp"
#include "gradinf/multipoly.hpp"
#include "gradinf/normalize.hpp"
#include "gradinf/parser.hpp"
#include "gradinf/puiseux.hpp"
#include "gradinf/report.hpp"
#include "gradinf/resultant.hpp"
#include "gradinf/upoly.hpp"
#include "gradinf/witness.hpp"
