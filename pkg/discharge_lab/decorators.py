from functools import wraps
from typing import TYPE_CHECKING, Any, Callable, Dict, Optional, Union

from django_rq import get_queue

if TYPE_CHECKING:
    from redis import Redis
    from rq.job import Retry

from rq.defaults import DEFAULT_RESULT_TTL
from rq.queue import Queue
from rq.utils import backend_class

from .conf import get_setting


class job:  # noqa
    """
    RQ's job decorator that works out the queue and its connection from
    the settings.

    Without an explicit ``queue`` the ``DLAB["QUEUE"]`` queue is used.
    ``DLAB["DEFAULT_RESULT_TTL"]`` and ``DLAB["DEFAULT_FAILURE_TTL"]``
    are the defaults for ``result_ttl`` and ``failure_ttl``.
    """
    queue_class = Queue

    def __init__(
        self,
        queue: Optional[Union["Queue", str]] = None,
        queue_class: Optional["Queue"] = None,
        connection: Optional["Redis"] = None,
        timeout: Optional[int] = None,
        result_ttl: Optional[int] = None,
        ttl: Optional[int] = None,
        failure_ttl: Optional[int] = None,
        description: Optional[str] = None,
        at_front: bool = False,
        meta: Optional[Dict] = None,
        retry: Optional["Retry"] = None,
        on_failure: Optional[Callable[..., Any]] = None,
        on_success: Optional[Callable[..., Any]] = None,
    ):
        """
        Adds a ``delay`` method to the decorated function, which enqueues
        a call to it::

            @job()
            def scan(plg_text, lemma):
                ...

            scan.delay(text, "L2.2")
        """
        self._queue = queue
        self._queue_class = backend_class(self, "queue_class", override=queue_class)
        self._connection = connection
        self.timeout = timeout
        self._result_ttl = result_ttl
        self.ttl = ttl
        self._failure_ttl = failure_ttl
        self.description = description
        self.at_front = at_front
        self.meta = meta
        self.retry = retry
        self.on_success = on_success
        self.on_failure = on_failure

    @property
    def result_ttl(self):
        return self._result_ttl or get_setting("DEFAULT_RESULT_TTL") or DEFAULT_RESULT_TTL

    @property
    def failure_ttl(self):
        return self._failure_ttl or get_setting("DEFAULT_FAILURE_TTL")

    @property
    def queue(self):
        queue = self._queue or get_setting("QUEUE")
        if isinstance(queue, str):
            try:
                return get_queue(queue)
            except KeyError:
                return self._queue_class(name=queue, connection=self._connection)
        return queue

    def build_enqueue_params(self, args, kwargs):
        at_front = kwargs.pop("at_front", None)
        if at_front is None:
            at_front = self.at_front

        return {
            "args": args,
            "kwargs": kwargs,
            "timeout": self.timeout,
            "result_ttl": self.result_ttl,
            "ttl": self.ttl,
            "failure_ttl": self.failure_ttl,
            "description": self.description,
            "job_id": kwargs.pop("job_id", None),
            "at_front": at_front,
            "meta": self.meta,
            "retry": self.retry,
            "on_failure": self.on_failure,
            "on_success": self.on_success,
        }

    def __call__(self, f):
        @wraps(f)
        def delay(*args, **kwargs):
            params = self.build_enqueue_params(args, kwargs)
            return self.queue.enqueue_call(f, **params)

        f.delay = delay
        return f
