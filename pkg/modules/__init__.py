# Exact root-system arithmetic and the index computations built on it
