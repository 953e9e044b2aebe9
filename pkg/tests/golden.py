"""Parser fixtures shared by the DSL tests and the acceptance suite."""

from pg4curves.errors import ArityError, ParseError, UnknownIdentifier

GOLDEN_EXPRESSIONS = [
    "s",
    "0",
    "-s",
    "2.5",
    "pi",
    "e",
    "s^2/2",
    "-s^2",
    "1+2*s^3",
    "(1+s)^2",
    "s^-1",
    "s^0.5",
    "(-s)^2",
    "1-(s-1)",
    "1-s-1",
    "s/(2*s+1)",
    "s/2/3",
    "s/(2/3)",
    "sin(s)*cos(s)",
    "cosh(s)^2-sinh(s)^2",
    "exp(-s^2)",
    "ln(1+s^2)",
    "sqrt(s^2+1)",
    "2*pi*s",
    "e^2*s",
    "sin(sqrt(3)*s)/(3*sqrt(3))",
    "1e-3*s^5-2.5e2",
    "-(-s)",
    "-(s+1)*-(s-1)",
    "s*(s*(s*(s+1)+1)+1)",
]

GOLDEN_CURVES = [
    "x=s; y=cosh(s); z=sinh(s); w=0 on [0,1]",
    "x=s; y=s^2/2; z=s; w=s*sin(s) on [0,2]",
    "x=2*t; y=t; z=0; w=0 on [0, 1]",
    "w=0; z=0; y=t^2; x=exp(t) on [-1, 1]",
]

MALFORMED = [
    ("x=s; y=foo(s); z=s; w=0 on [0,1]", UnknownIdentifier, 1, 8),
    ("x=s; y=s^s; z=0; w=0 on [0,1]", ParseError, 1, 10),
    ("x=s; y=(s+1; z=0; w=0 on [0,1]", ParseError, 1, 12),
    ("x=s; y=s; z=0 on [0,1]", ParseError, 1, 15),
    ("x=s; y=s; z=0; w=0 on [1,0]", ParseError, 1, 23),
    ("x=s; y=sin(s,s); z=0; w=0 on [0,1]", ArityError, 1, 13),
    ("x=s; y=s*; z=0; w=0 on [0,1]", ParseError, 1, 10),
    ("x=s; y=s; z=0; w=0 on [0,1] extra", ParseError, 1, 29),
    ("x=s;\ny=s $ 2;\nz=0; w=0 on [0,1]", ParseError, 2, 5),
    ("x=s; y=t; z=0; w=0 on [0,1]", UnknownIdentifier, 1, 8),
    ("x=s; x=s; z=0; w=0 on [0,1]", ParseError, 1, 6),
    ("x=s; y=sin; z=0; w=0 on [0,1]", ArityError, 1, 8),
    ("x=s; y=pi(s); z=0; w=0 on [0,1]", ArityError, 1, 8),
    ("x=s; y=s; z=0; w=0 on [0 1]", ParseError, 1, 26),
]

