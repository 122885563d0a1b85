# This file makes Python treat the 'data_models' directory under 'tests' as a sub-package.
