# oracle/__init__.py
# Direct ODE integration used to cross-check the closed forms.
