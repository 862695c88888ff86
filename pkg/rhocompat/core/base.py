class Base:
    """
    Common base of named rhocompat objects: models,
    vector families and solvers.

    Subclasses report their settings through `info`,
    which `print_info` turns into a table.

    Attributes
    ----------
    name: str
        The name, default is the class name

    :group: core

    """

    def __init__(self, name=None):
        self.name = type(self).__name__ if name is None else name
        self._initialized = False

    def __str__(self):
        kind = type(self).__name__
        return kind if self.name == kind else f"{self.name} ({kind})"

    @property
    def initialized(self):
        """
        Flag for finished initialization

        Returns
        -------
        bool :
            True if initialize has run and finalize has not

        """
        return self._initialized

    def check_initialized(self, caller):
        """
        Raises if the object is not initialized.

        Parameters
        ----------
        caller: str
            The calling method, for the error message

        """
        if not self._initialized:
            raise ValueError(
                f"{type(self).__name__} '{self.name}': {caller} called before initialization"
            )

    def info(self):
        """
        The settings to report.

        Returns
        -------
        dict :
            Setting names to values, in print order

        """
        return {}

    def print_info(self):
        """
        Prints the settings from `info` as a table
        """
        data = self.info()
        s = f"  {type(self).__name__} '{self.name}'  "
        hline = "-" * len(s)
        print(s)
        print(hline)
        if data:
            L = max(len(k) for k in data)
            for k, v in data.items():
                v = f"{v:.1e}" if isinstance(v, float) else v
                print(f"  {k:<{L}} : {v}")
            print(hline)

    def initialize(self, verbosity=0):
        """
        Initialize the object.

        Parameters
        ----------
        verbosity: int
            The verbosity level, 0 = silent

        """
        self._initialized = True

    def finalize(self, verbosity=0):
        """
        Finalize the object.

        Parameters
        ----------
        verbosity: int
            The verbosity level, 0 = silent

        """
        self._initialized = False
