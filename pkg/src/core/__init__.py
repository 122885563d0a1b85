# This file makes 'core' a Python package
