""" Exact arithmetic audits of the two-boundary Temperley-Lieb algebra. """
