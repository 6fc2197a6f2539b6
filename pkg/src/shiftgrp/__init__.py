"""Return-word presentations and finite images for substitutive subshifts.

The package computes, for a substitution over a finite alphabet, the
return-word generator code of a connection, the induced free-group
endomorphism defining the presentation of the associated subshift group,
and the finite groups arising as continuous images of that presented
group, decided through the periodic points of a dual transformation on
letter-to-group maps.
"""
from .words import (Alphabet, Substitution, SubshiftLanguage, apply, compose,
                    connections, factors, first_letter_map, incidence_matrix,
                    is_primitive, is_weakly_primitive, last_letter_map,
                    omega_power_function, power_apply, tilde_exponent,
                    ultimate_alphabet)
from .codes import Code, bounded_delay_check, is_code, parse
from .returns import ReturnData, recurrence_bound, return_words, x_set
from .freegrp import (FreeEndo, GroupWord, SubgroupGraph, abelianization_matrix,
                      code_transform, endo_apply, endo_compose, endo_power,
                      fold, is_automorphism, is_whole_group, matrix_omega_power,
                      membership, positive_basis_reduction, subgroup_rank)
from .fingrp import (EvalMap, FiniteGroup, alternating, cyclic, direct_product,
                     elem_abelian, evaluate, generates, group_rank, h18,
                     perm_from_cycles, perm_group, symmetric)
from .images import (Witness, abelian_rank, bar_map, image_survey, is_image,
                     kp_iterate_check, orbit_omega)
from .pipeline import (AnalysisReport, Presentation, analyze,
                       build_presentation, eliminate_fourth_generator,
                       letter_presentation, reduced_three_generator_endo,
                       restrict_presentation)
from .errors import (FactorizationError, InputError, ResourceLimitError,
                     ShiftgrpError, StructuralError)

__version__ = "0.1.0"
