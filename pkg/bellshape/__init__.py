# bellshape - bell-shaped density toolkit
# Representation of bell-shaped functions, their factorisation, exact derivative
# certification and the Post-formula machinery around it.

from dotenv import load_dotenv

load_dotenv()

__version__ = '1.0.0'
