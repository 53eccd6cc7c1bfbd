#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This modules assists with some helper functions for evaluating a number of
independent work items in parallel, using the asyncio library. Each item is
run in a worker thread so that the numpy kernels can overlap. This is useful
for evaluating many cases against independent copies of a junction tree.
"""

import asyncio


async def gather_concurrently(main: callable, items: list, *args, **kwargs) -> list:
    """
    Evaluates the main function for each of the items concurrently and returns
    the results in the same order as the items. The main function must have the
    item as the first parameter, and can take any number of additional
    parameters and keyword arguments.

    :param main:    The function to evaluate with each item.
    :type main:     callable
    :param items:   The work items to evaluate.
    :type items:    list
    :param args:    Additional positional arguments to pass to the main function.
    :type args:     tuple
    :param kwargs:  Additional keyword arguments to pass to the main function.
    :type kwargs:   dict

    :return:        The results of the main function, ordered as the items
    :rtype:         list
    """

    # Run each evaluation in its own thread and collect them in order
    tasks = [
        asyncio.create_task(asyncio.to_thread(main, item, *args, **kwargs))
        for item in items
    ]
    return list(await asyncio.gather(*tasks))


def run_concurrently(main: callable, items: list, *args, **kwargs) -> list:
    """
    Evaluates the main function for each of the items concurrently. This is a
    synchronous wrapper around gather_concurrently which creates its own event
    loop, and returns the results ordered as the items regardless of which
    evaluation finished first.

    :param main:    The function to evaluate with each item.
    :type main:     callable
    :param items:   The work items to evaluate.
    :type items:    list
    :param args:    Additional positional arguments to pass to the main function.
    :type args:     tuple
    :param kwargs:  Additional keyword arguments to pass to the main function.
    :type kwargs:   dict

    :return:        The results of the main function, ordered as the items
    :rtype:         list
    """

    # Nothing to evaluate
    if len(items) == 0:
        return []

    return asyncio.run(gather_concurrently(main, list(items), *args, **kwargs))
