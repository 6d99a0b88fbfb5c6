# Shape Package - representation of bell-shaped functions
# phi validation, the transform, regularity and the PFF / AM-CM split
